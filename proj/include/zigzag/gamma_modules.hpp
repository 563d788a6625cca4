#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zigzag {

/// Integer matrix whose entries are read modulo a prime.
using ModMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Reduces every entry into [0, p).
ModMatrix reduce_mod(ModMatrix m, std::int64_t p);
/// Rank over F_p by Gaussian elimination.
std::int64_t rank_mod_p(ModMatrix m, std::int64_t p);
/// (a·b) mod p with entries reduced into [0, p).
ModMatrix matmul_mod(const ModMatrix& a, const ModMatrix& b, std::int64_t p);

/// An element (a b; c d) of GL₂(F_p).
struct Gl2 {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 1;

  bool operator==(const Gl2&) const = default;
};

Gl2 gl2_mul(const Gl2& g, const Gl2& h, std::int64_t p);
std::int64_t gl2_det(const Gl2& g, std::int64_t p);
/// Shear (1 1; 0 1), Weyl element (0 1; 1 0) and diag(γ, 1) with γ a primitive root.
std::vector<Gl2> gamma_generators(std::int64_t p);
/// A random word of the given length in the generators.
Gl2 random_word(std::int64_t p, std::mt19937_64& rng, int length);

/// V_m ⊗ D^s.
struct GammaModuleLabel {
  std::int64_t m = 0;
  std::int64_t s = 0;  // modulo p − 1
  /// Set for V_{p−1} ⊗ D^n in the even case, which is projective and splits off.
  bool projective = false;

  std::int64_t dimension() const { return m + 1; }
  bool operator==(const GammaModuleLabel& o) const { return m == o.m && s == o.s; }
  std::string to_string() const;
};

/// Sym^r F_p² with basis X^{r−j} Y^j (j = 0..r) and the action
/// (a b; c d)·P(X, Y) = P(aX + cY, bX + dY).
class ConcreteModule {
 public:
  ConcreteModule(std::int64_t p, std::int64_t r);

  std::int64_t p() const { return p_; }
  std::int64_t degree() const { return r_; }
  std::int64_t dimension() const { return r_ + 1; }

  /// Column j is the image of X^{r−j} Y^j.
  ModMatrix action(const Gl2& g) const;

 private:
  std::int64_t p_;
  std::int64_t r_;
};

/// Matrix of P(X, Y) ↦ P(aX + cY, bX + dY) on degree-r polynomials with
/// coefficients in Z/modulus; g may be any integer matrix.
ModMatrix sym_power_action(std::int64_t r, const Gl2& g, std::int64_t modulus);

/// Coefficients of θ^i = (X^p Y − X Y^p)^i in the monomial basis of degree i(p+1).
std::vector<std::int64_t> theta_power(std::int64_t p, std::int64_t i);

/// Matrix of P ↦ θ^i·P from V_{r−i(p+1)} to V_r.
ModMatrix theta_multiplication(std::int64_t p, std::int64_t r, std::int64_t i);

/// Linear map on V_r whose kernel is {P : θ^i | P}: it records the
/// coefficients of Y^0..Y^{i−1} and the remainder of P(X, 1) modulo (X^p − X)^i.
ModMatrix theta_divisibility_map(std::int64_t p, std::int64_t r, std::int64_t i);

/// dim V_r^{(i)} by brute-force polynomial division.
std::int64_t dim_theta_filtration(std::int64_t p, std::int64_t r, std::int64_t i);
/// max(0, r − i(p+1) + 1).
std::int64_t dim_theta_filtration_formula(std::int64_t p, std::int64_t r, std::int64_t i);

struct SubquotientCheck {
  bool injective = false;
  bool image_is_divisible_part = false;
  bool equivariant = false;
  bool ok() const { return injective && image_is_divisible_part && equivariant; }
};

/// Multiplication by θ^i identifies V_{r−i(p+1)} ⊗ D^i with V_r^{(i)}; checks
/// injectivity, the image, and equivariance on generators plus random words.
SubquotientCheck check_subquotient_iso(std::int64_t p, std::int64_t r, std::int64_t i, int random_words = 50);
bool verify_subquotient_iso(std::int64_t p, std::int64_t r, std::int64_t i);

/// (J_{2i}, J_{2i+1}) = (V_{b−2i} ⊗ D^i, V_{p−1−b+2i} ⊗ D^{b−i}). Throws IndexOutOfRange.
std::pair<GammaModuleLabel, GammaModuleLabel> jh_factor_labels(std::int64_t p, std::int64_t b, std::int64_t i);
/// Largest valid i: n−1 for b = 2n−1, n for b = 2n.
std::int64_t jh_max_index(std::int64_t b);
/// J_j for 0 ≤ j ≤ 2·jh_max_index(b) + 1.
GammaModuleLabel jh_factor(std::int64_t p, std::int64_t b, std::int64_t j);

struct DimensionCheck {
  std::string name;
  bool passed = false;
};

struct DimensionReport {
  std::int64_t p = 0;
  std::int64_t b = 0;
  std::vector<DimensionCheck> checks;
  bool all_passed() const;
};

/// Column sums p+1, diagonal sums p−1 and the self-dual / projective factors.
DimensionReport column_and_diagonal_sums(std::int64_t p, std::int64_t b);

}  // namespace zigzag
