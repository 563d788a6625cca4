#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "zigzag/gamma_modules.hpp"
#include "zigzag/valuation.hpp"

namespace zigzag {

/// A 2×2 matrix over Q, read inside GL₂(Q_p).
struct RationalMatrix {
  BigRational a = 1;
  BigRational b = 0;
  BigRational c = 0;
  BigRational d = 1;

  bool operator==(const RationalMatrix&) const = default;
  RationalMatrix operator*(const RationalMatrix& o) const;
  BigRational det() const { return a * d - b * c; }
  std::string to_string() const;
};

/// The vertex (p^a, c; 0, 1)·KZ of the tree, with c ∈ Z[1/p] reduced modulo p^a Z_p
/// to its representative in [0, p^a).
struct TreeVertex {
  std::int64_t a = 0;
  BigRational c = 0;

  bool operator==(const TreeVertex&) const = default;
  std::strong_ordering operator<=>(const TreeVertex& o) const;

  RationalMatrix matrix(std::int64_t p) const;
  /// Distance to the vertex of the identity: a − 2·min(a, v(c), 0).
  std::int64_t distance(std::int64_t p) const;
  std::string to_string() const;
};

/// g = vertex_matrix · k · p^central with k ∈ GL₂(Z_p).
struct CosetDecomposition {
  TreeVertex vertex;
  RationalMatrix k;
  std::int64_t central = 0;
};

/// Throws SingularMatrix when det g = 0.
CosetDecomposition decompose_coset(std::int64_t p, const RationalMatrix& g);
TreeVertex normalize_coset(std::int64_t p, const RationalMatrix& g);

/// Coefficients in W_M(F_{p^f}), stored additively as (Z/p^M)^f.
struct CoefficientRing {
  std::int64_t p = 0;
  int precision = 1;  // M
  int degree = 1;     // f

  std::int64_t modulus() const;
  bool operator==(const CoefficientRing&) const = default;
  std::string to_string() const;
};

/// A finitely supported section of ind_{KZ}^G Sym^r: the value at a vertex
/// is the vector v in [vertex.matrix(), v], an (r+1)×f matrix whose row j
/// is the coefficient of X^{r−j} Y^j.
class TreeFunction {
 public:
  TreeFunction(CoefficientRing ring, std::int64_t r);

  static TreeFunction elementary(CoefficientRing ring, std::int64_t r, const TreeVertex& vertex, const ModMatrix& v);

  const CoefficientRing& ring() const { return ring_; }
  std::int64_t p() const { return ring_.p; }
  std::int64_t degree() const { return r_; }
  const std::map<TreeVertex, ModMatrix>& values() const { return values_; }
  std::size_t support_size() const { return values_.size(); }
  /// Zero matrix off the support.
  ModMatrix value(const TreeVertex& vertex) const;

  /// Adds v at the vertex, dropping the entry if it becomes zero.
  void add(const TreeVertex& vertex, const ModMatrix& v);
  TreeFunction operator+(const TreeFunction& o) const;
  TreeFunction scaled(std::int64_t n) const;

  bool operator==(const TreeFunction& o) const;

 private:
  CoefficientRing ring_;
  std::int64_t r_;
  std::map<TreeVertex, ModMatrix> values_;
};

/// Action on Sym^r with coefficients mod the ring modulus of an integral matrix.
ModMatrix integral_action(std::int64_t r, const RationalMatrix& k, std::int64_t p, std::int64_t modulus);

/// T[g, v] = Σ_λ [g(p, [λ]; 0, 1), v(X, −[λ]X + pY)] + [g(1, 0; 0, p), v(pX, Y)].
TreeFunction apply_T(const TreeFunction& f);
TreeFunction apply_T_power(const TreeFunction& f, int times);

/// g'·[g, v] = [g'g, v], renormalized.
TreeFunction g_act(const RationalMatrix& g, const TreeFunction& f);

/// Sum of the values (r = 0 only; throws WrongDegree).
ModMatrix total_sum_functional(const TreeFunction& f);
/// Sum of the values weighted by (−1)^distance (r = 0 only; throws WrongDegree).
ModMatrix alternating_sum_functional(const TreeFunction& f);

/// Largest distance of a support vertex from the identity vertex (0 if empty).
std::int64_t support_radius(const TreeFunction& f);

nlohmann::json to_json(const TreeFunction& f);

}  // namespace zigzag
