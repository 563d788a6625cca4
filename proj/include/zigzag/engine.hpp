#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zigzag/errors.hpp"
#include "zigzag/galois_rep.hpp"
#include "zigzag/padic.hpp"

namespace zigzag {

enum class Provenance {
  THEOREM_FE,
  THEOREM_BREUIL,
  THEOREM_BLZ,
  THEOREM_BG09,
  THEOREM_BG13,
  THEOREM_BGR18,
  THEOREM_GR19,
  CONJECTURE_ZIGZAG,
  KNOWN_ELSEWHERE,
  CAVEAT_ZONE,
  UNKNOWN,
};

std::string to_string(Provenance provenance);
bool is_theorem(Provenance provenance);

/// One case of the chotomy: IRRED(j) = ind(ω₂^{b+1+j(p−1)}) or
/// RED(i) = μ_{λ_i} ω^{b−i+1} ⊕ μ_{λ_i⁻¹} ω^i.
struct Branch {
  bool reducible = false;
  std::int64_t index = 0;
  bool terminal = false;

  bool operator==(const Branch&) const = default;
  std::string to_string() const;
};

/// Derived quantities of the exceptional setting for a given (p, k, a_p).
template <PadicScalar S>
struct ZigzagParams {
  std::int64_t p = 0;
  std::int64_t k = 0;
  std::int64_t r = 0;
  Valuation v;
  std::int64_t b = 0;
  std::int64_t n = 0;
  std::int64_t v_minus = 0;
  std::int64_t v_plus = 0;
  bool exceptional = false;
  std::optional<S> c;  // present iff exceptional
  Valuation tau;       // v(c); meaningful iff exceptional
  Valuation t;         // v(r − b); +∞ iff r = b
};

/// a_p as accepted by the high-level entry points.
using ApValue = std::variant<ExactQuadratic, PadicElement>;

Valuation valuation_of(const ApValue& a_p);
const ContextPtr& context_of(const ApValue& a_p);
std::string to_string(const ApValue& a_p);

/// a_p = unit · p^exponent, with p^{1/2} = √p.
struct ApMonomial {
  BigRational unit = 1;
  Valuation exponent = Valuation::integer(2);
};

struct EngineConfig {
  /// Caveat disks are r ≡ b + m(p−1) mod p^{caveat_disk}(p−1).
  int caveat_disk = 1;
  /// Values of a_p for which the reduction may lag behind zig-zag.
  std::vector<ApMonomial> lag_exclusions = {ApMonomial{1, Valuation::integer(2)}};
  /// Treat conjecture-only nearby predictions as undecided in local-constancy checks.
  bool strict = false;
};

struct Prediction {
  std::int64_t p = 0;
  std::int64_t k = 0;
  Valuation v;
  Provenance provenance = Provenance::UNKNOWN;
  std::optional<GaloisRep> rep;
  std::optional<Branch> branch;
  std::optional<std::int64_t> b;
  std::optional<Valuation> tau;
  std::optional<Valuation> t;
  /// For CAVEAT_ZONE: the offending m and what zig-zag alone would say.
  std::optional<std::int64_t> caveat_m;
  std::optional<GaloisRep> formal_zigzag;
  std::vector<std::string> notes;
};

// ---------------------------------------------------------------------------
// Exceptional setting

/// (r ≡ 2v mod (p−1), b = 2v). Throws SlopeOutOfRange unless 0 < v ≤ (p−1)/2.
std::pair<bool, std::int64_t> exceptional_class(std::int64_t p, std::int64_t k, Valuation v);

/// v_− and v_+ for b = 2v: the integers adjacent to v other than v itself.
std::pair<std::int64_t, std::int64_t> adjacent_integers(std::int64_t b);

/// C(r−v_−, v_+) · C(r−v_+, v_−).
BigInt binomial_product(std::int64_t r, std::int64_t b);

/// c = (a_p² − C(r−v_−, v_+)·C(r−v_+, v_−)·p^b) / (p·a_p).
template <PadicScalar S>
S compute_c(std::int64_t p, std::int64_t r, const S& a_p, Valuation v) {
  if (a_p.is_zero()) throw ZeroAp("a_p must be nonzero");
  if (v.is_infinite() || v.twice() <= 0) throw NonPositiveSlope("slope must be positive");
  const auto& ctx = a_p.context();
  if (ctx->p() != p) throw InvalidArgument("a_p lives over a different prime");
  const std::int64_t b = v.twice();
  const S binom = S::from_integer(ctx, binomial_product(r, b));
  const S numerator = a_p * a_p - binom * p_power<S>(ctx, b);
  return numerator / (p_power<S>(ctx, 1) * a_p);
}

template <PadicScalar S>
ZigzagParams<S> zigzag_params(std::int64_t p, std::int64_t k, const S& a_p) {
  if (a_p.is_zero()) throw ZeroAp("a_p must be nonzero");
  const Valuation v = a_p.require_finite_valuation();
  if (v.twice() <= 0) throw NonPositiveSlope("v(a_p) = " + v.to_string() + " is not positive");
  ZigzagParams<S> out;
  out.p = p;
  out.k = k;
  out.r = k - 2;
  out.v = v;
  const auto [exceptional, b] = exceptional_class(p, k, v);
  out.exceptional = exceptional;
  out.b = b;
  out.n = (b + 1) / 2;
  std::tie(out.v_minus, out.v_plus) = adjacent_integers(b);
  out.t = vp(BigInt(out.r - b), p);
  if (exceptional) {
    out.c = compute_c(p, out.r, a_p, v);
    out.tau = out.c->valuation();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chotomy

/// The case of the chotomy selected by τ relative to t. Boundaries are the
/// integers t, t+1, …, t+(n−1). Throws DegenerateT if t = +∞.
Branch zigzag_branch(std::int64_t b, Valuation tau, Valuation t);

/// The representation attached to a branch, with the given unramified value
/// on the first summand of reducible cases.
GaloisRep branch_rep(const FieldPtr& field, std::int64_t b, const Branch& branch, const UnramValue& lambda);

/// Whether λ_i is determined by a known formula (otherwise an unknown is returned).
bool lambda_is_known(std::int64_t i, std::int64_t b);

/// λ_i for the reducible branch RED(i). For b = 1, i = 1 and b = 3, i = 2 the
/// formula gives λ + λ⁻¹; the smaller root is returned.
template <PadicScalar S>
UnramValue lambda_value(std::int64_t i, std::int64_t b, std::int64_t r, const S& c) {
  const auto& ctx = c.context();
  if (!lambda_is_known(i, b)) return UnknownValue{"*_" + std::to_string(i)};
  auto as_s = [&](std::int64_t n) { return S::from_integer(ctx, n); };
  if (i == 1) {
    const GFElem value = reduce(as_s(b) / as_s(b - r) * c);
    if (b == 1) return reciprocal_pair_with_trace(value).first;
    if (value.is_zero()) throw InvalidArgument("lambda_1 vanishes; the branch is not RED(1)");
    return ExtElem(value);
  }
  const GFElem d = reduce(as_s(b - 1) * c / (as_s(b - 1 - r) * as_s(b - r) * p_power<S>(ctx, 1)));
  return reciprocal_pair_with_trace(d).first;
}

/// Full chotomy evaluation: branch plus representation with its λ.
template <PadicScalar S>
std::pair<Branch, GaloisRep> chotomy_prediction(const ZigzagParams<S>& zp) {
  if (!zp.exceptional) throw InvalidArgument("weight is not in the exceptional class");
  const FieldPtr& field = zp.c->context()->field();
  const Branch branch = zigzag_branch(zp.b, zp.tau, zp.t);
  UnramValue lambda = ExtElem(field->one());
  if (branch.reducible) lambda = lambda_value(branch.index, zp.b, zp.r, *zp.c);
  return {branch, branch_rep(field, zp.b, branch, lambda)};
}

/// The chotomy representation for symbolic (b, τ, t); λ values are unknowns.
GaloisRep formal_chotomy(const FieldPtr& field, std::int64_t b, Valuation tau, Valuation t);

// ---------------------------------------------------------------------------
// Regimes

Provenance classify_regime(std::int64_t p, std::int64_t k, const ApValue& a_p, const EngineConfig& config = {});
Prediction predict(std::int64_t p, std::int64_t k, const ApValue& a_p, const EngineConfig& config = {});

/// k > 3v + α(k−1) + 1.
bool berger_bound_holds(std::int64_t p, std::int64_t k, Valuation v);

/// The smallest m with 0 < m ≤ v−1 and r ≡ b + m(p−1) mod p^{s0}(p−1).
std::optional<std::int64_t> caveat_zone(std::int64_t p, std::int64_t r, Valuation v, int s0 = 1);

/// The five tabulated (k, slope) pairs at small weights. Throws NotInTable.
GaloisRep breuil_weight_reduction(std::int64_t p, std::int64_t k, const ApValue& a_p);
bool in_breuil_table(std::int64_t p, std::int64_t k, Valuation v);

enum class Verdict { COMPATIBLE, CONFLICT, UNDECIDED };
std::string to_string(Verdict verdict);

struct LocalConstancyReport {
  std::int64_t k = 0;
  std::int64_t k_nearby = 0;
  std::int64_t t_prime = 0;
  Prediction base;
  Prediction nearby;
  bool berger_bound = false;
  Verdict verdict = Verdict::UNDECIDED;
};

/// Compares the reduction at k with the one at k' = k + p^{t'}(p−1).
LocalConstancyReport local_constancy_conflict(std::int64_t p, std::int64_t k, const ApValue& a_p,
                                              std::int64_t t_prime, const EngineConfig& config = {});

enum class Consistency { CONSISTENT, INCONSISTENT };
std::string to_string(Consistency consistency);

struct BlzReport {
  std::int64_t p = 0;
  std::int64_t b = 0;
  std::int64_t m = 0;
  std::int64_t r = 0;
  Valuation v;
  Valuation tau;
  Valuation t;
  /// p | C(r − v_+, v_−), which makes τ take its extremal value.
  bool kummer_divisible = false;
  /// b = p − 1, where the slope no longer exceeds ⌊r/(p−1)⌋.
  bool boundary = false;
  GaloisRep blz_rep;
  GaloisRep zigzag_rep;
  Consistency verdict = Consistency::CONSISTENT;
  std::vector<std::string> notes;
};

/// Compares the BLZ answer ind(ω₂^{k−1}) with zig-zag at r = b + m(p−1),
/// v = b/2 for b = 2m+1 or b = 2m+2.
BlzReport blz_consistency(std::int64_t p, std::int64_t b, std::int64_t m);

/// Twisting the generic branch at slope v by ω gives the generic branch at v+1.
bool theta_compatibility(std::int64_t p, Valuation v);

struct IrreducibilityViolation {
  std::int64_t p = 0;
  std::int64_t k = 0;
  Valuation v;
  std::string detail;
};

/// Reducible predictions with k even and v non-integral. The scan covers the
/// full chotomy table for every exceptional class with weights in range,
/// and predict() for a_p = p^v at each (k, v).
std::vector<IrreducibilityViolation> irreducibility_conjecture_scan(std::int64_t p, std::int64_t k_min,
                                                                    std::int64_t k_max,
                                                                    const std::vector<Valuation>& slopes,
                                                                    const EngineConfig& config = {});

/// Representatives τ − t of every region of the chotomy for b.
std::vector<Valuation> chotomy_region_offsets(std::int64_t b);

/// ind(ω₂^c), or ω^m·(μ_i ⊕ μ_{−i}) with i² = −1 when c = m(p+1).
GaloisRep induced_label(const FieldPtr& field, std::int64_t c);

}  // namespace zigzag
