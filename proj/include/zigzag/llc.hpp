#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zigzag/engine.hpp"
#include "zigzag/gamma_modules.hpp"
#include "zigzag/galois_rep.hpp"

namespace zigzag {

/// [x] ∈ {0, …, p−2} with [x] ≡ x mod (p−1).
std::int64_t bracket_normalize(std::int64_t p, std::int64_t x);

/// π(r, λ, η) with η = ω^s·μ_z, always carried in semisimplified form.
struct SmoothRepLabel {
  std::int64_t r = 0;
  UnramValue lambda;
  std::int64_t s = 0;
  UnramValue z;

  auto operator<=>(const SmoothRepLabel&) const = default;
  bool operator==(const SmoothRepLabel&) const = default;

  bool is_supersingular() const;
  /// False for (0, ±1) and (p−1, ±1).
  bool is_irreducible(std::int64_t p) const;
  /// Semisimple constituents; a single entry when irreducible.
  std::vector<std::string> constituents(std::int64_t p) const;
  std::string to_string() const;
};

SmoothRepLabel smooth_label(const FieldPtr& field, std::int64_t r, UnramValue lambda, std::int64_t s);

nlohmann::json to_json(const SmoothRepLabel& label);
SmoothRepLabel smooth_label_from_json(const FieldPtr& field, const nlohmann::json& j);

/// The semisimple mod-p dictionary, as a sorted multiset of labels.
/// Throws UnknownLambda when a symbolic λ leaves the twist undetermined.
std::vector<SmoothRepLabel> ll_map(const GaloisRep& rep);

/// The unique canonical preimage. Throws NotInImage.
GaloisRep ll_inverse(const FieldPtr& field, const std::vector<SmoothRepLabel>& labels);

/// Whether π(r, 0, ω^s) and π(r', 0, ω^{s'}) come from the same Galois representation.
bool supersingular_equivalence(std::int64_t p, std::int64_t r, std::int64_t s, std::int64_t r_prime,
                               std::int64_t s_prime);

/// T − λ (λ = 0 gives T) or T² − dT + 1.
struct HeckePolynomial {
  enum class Kind { LINEAR, QUADRATIC };
  Kind kind = Kind::LINEAR;
  UnramValue value;  // root for LINEAR, trace d for QUADRATIC

  bool operator==(const HeckePolynomial&) const = default;
  std::string to_string() const;
};

HeckePolynomial hecke_t(const FieldPtr& field);
HeckePolynomial hecke_linear(UnramValue root);
HeckePolynomial hecke_quadratic(UnramValue trace);

/// Constraint on F_i, the image of ind J_i in the reduction.
struct FSlot {
  enum class Kind { ZERO, QUOTIENT_OF, UNCONSTRAINED };
  std::int64_t index = 0;
  Kind kind = Kind::ZERO;
  /// F_i is a quotient of ind J_i / P for every listed P.
  std::vector<HeckePolynomial> quotient_of;

  std::string to_string() const;
};

struct FPattern {
  std::int64_t p = 0;
  std::int64_t b = 0;
  std::string region;
  std::vector<FSlot> slots;  // indices not listed are ZERO

  const FSlot* slot(std::int64_t index) const;
  std::string to_string() const;
};

/// The expected nonvanishing F_i for τ − t = delta. When lambda is given it
/// fills the eigenvalues of the reducible case; otherwise they stay symbolic.
FPattern jh_selection_table(const FieldPtr& field, std::int64_t b, Valuation delta,
                            const std::optional<UnramValue>& lambda = std::nullopt);

/// One of the nine statements for slope 3/2.
struct Gr19Statement {
  Valuation offset;  // boundary is t + offset
  int relation = 0;  // −1: τ < boundary, 0: τ =, +1: τ >
  std::vector<FSlot> consequences;
  bool applies = false;

  std::string to_string() const;
};

struct Gr19Constraints {
  std::int64_t p = 0;
  std::int64_t r = 0;
  Valuation tau;
  Valuation t;
  std::optional<GFElem> lambda1;
  std::optional<GFElem> d;
  std::vector<Gr19Statement> statements;
  /// Combination of the applicable statements; J_0 is recorded as ZERO.
  FPattern pattern;
};

/// The nine statements for b = 3, p ≥ 5, r > 3, evaluated at the given a_p.
Gr19Constraints gr19_constraints(std::int64_t p, std::int64_t r, const ApValue& a_p);
/// The nine statements evaluated at a symbolic position τ − t with given λ₁ and d.
Gr19Constraints gr19_constraints_at(const FieldPtr& field, Valuation delta, const std::optional<GFElem>& lambda1,
                                    const std::optional<GFElem>& d);

/// Whether the dictionary image of rep can be distributed over the slots of the pattern.
bool llc_cross_check(const GaloisRep& rep, const FPattern& pattern);
bool llc_cross_check(const Prediction& prediction, const FPattern& pattern);

}  // namespace zigzag
