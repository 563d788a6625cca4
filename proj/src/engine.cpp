#include "zigzag/engine.hpp"

#include <algorithm>

namespace zigzag {

namespace {

const Valuation kHalf = Valuation::halves(1);
const Valuation kOne = Valuation::integer(1);
const Valuation kThreeHalves = Valuation::halves(3);
const Valuation kTwo = Valuation::integer(2);

bool matches_monomial(const ExactQuadratic& a_p, const ApMonomial& m) {
  const auto& ctx = a_p.context();
  return a_p == ExactQuadratic(ctx, m.unit) * ExactQuadratic::uniformizer_power(ctx, m.exponent.twice());
}

bool matches_monomial(const PadicElement& a_p, const ApMonomial& m) {
  const auto& ctx = a_p.context();
  const PadicElement target =
      PadicElement::from_rational(ctx, m.unit) * PadicElement::uniformizer_power(ctx, m.exponent.twice());
  return (a_p - target).is_zero();
}

/// Square root of −1 in F_{p^{2f}}.
ExtElem sqrt_minus_one(const FieldPtr& field) {
  const GFElem minus_one = -field->one();
  if (auto s = minus_one.sqrt()) return ExtElem(*s);
  const auto s = (minus_one / field->nonsquare()).sqrt();
  return ExtElem(field->zero(), *s);
}

template <PadicScalar S>
void add_lag_notes(const S& a_p, Valuation v, const EngineConfig& config, Prediction& out) {
  for (const auto& m : config.lag_exclusions) {
    if (m.exponent == v && matches_monomial(a_p, m)) {
      out.notes.push_back("a_p = " + a_p.to_string() +
                          " is on the exclusion list; the true reduction may lag behind this prediction");
    }
  }
}

template <PadicScalar S>
std::pair<Branch, GaloisRep> chotomy_or_degenerate(const ZigzagParams<S>& zp) {
  if (zp.t.is_infinite()) {
    if (zp.tau.is_infinite()) throw DegenerateT("r = b and c = 0: both tau and t are infinite");
    const FieldPtr& field = zp.c->context()->field();
    const Branch branch{false, 0, false};
    return {branch, branch_rep(field, zp.b, branch, ExtElem(field->one()))};
  }
  return chotomy_prediction(zp);
}

Provenance classify_slope(std::int64_t p, std::int64_t k, Valuation v, const EngineConfig& config) {
  if (k < 2) throw InvalidWeight("k must be at least 2, got " + std::to_string(k));
  if (v.is_infinite()) throw ZeroAp("a_p must be nonzero");
  if (v.twice() <= 0) throw NonPositiveSlope("v(a_p) = " + v.to_string() + " is not positive");
  const std::int64_t r = k - 2;
  if (v.twice() > 2 * (r / (p - 1))) return Provenance::THEOREM_BLZ;
  if (k <= p + 1) return Provenance::THEOREM_FE;
  const bool breuil_restricted = (k == p + 5 && v == kTwo && p < 7);
  if (in_breuil_table(p, k, v) && !breuil_restricted) return Provenance::THEOREM_BREUIL;

  const std::int64_t b = v.twice();
  const bool in_range = b <= p - 1;
  const bool exceptional = in_range && mod_floor(r - b, p - 1) == 0;
  if (exceptional && v >= kTwo && caveat_zone(p, r, v, config.caveat_disk)) return Provenance::CAVEAT_ZONE;
  if (v == kHalf) return exceptional ? Provenance::THEOREM_BG13 : Provenance::THEOREM_BG09;
  if (exceptional && b == 2 && p >= 5 && r > 2) return Provenance::THEOREM_BGR18;
  if (exceptional && b == 3 && p >= 5 && r > 3) return Provenance::THEOREM_GR19;
  const bool breuil_weight = p <= r && r <= 2 * p - 2;
  if ((!exceptional && (v == kOne || v == kThreeHalves)) || breuil_weight) return Provenance::KNOWN_ELSEWHERE;
  if (exceptional) return Provenance::CONJECTURE_ZIGZAG;
  return Provenance::UNKNOWN;
}

/// The chotomy theorem that covers an exceptional weight with r > b, if any.
std::optional<Provenance> chotomy_theorem(std::int64_t p, std::int64_t r, std::int64_t b) {
  if (r <= b || b > p - 1 || mod_floor(r - b, p - 1) != 0) return std::nullopt;
  if (b == 1) return Provenance::THEOREM_BG13;
  if (b == 2 && p >= 5) return Provenance::THEOREM_BGR18;
  if (b == 3 && p >= 5) return Provenance::THEOREM_GR19;
  return std::nullopt;
}

template <PadicScalar S>
void add_overlap_note(std::int64_t p, std::int64_t k, const S& a_p, Prediction& out) {
  const auto other = chotomy_theorem(p, k - 2, out.v.twice());
  if (!other) return;
  try {
    const auto zp = zigzag_params(p, k, a_p);
    const GaloisRep rep = chotomy_prediction(zp).second;
    const bool agree = equals_on_inertia(rep, *out.rep);
    out.notes.push_back(to_string(*other) + " also applies and gives " + rep.to_string() +
                        (agree ? " (agrees on inertia)" : " (DISAGREES on inertia)"));
  } catch (const Error&) {
  }
}

template <PadicScalar S>
Prediction predict_impl(std::int64_t p, std::int64_t k, const S& a_p, const EngineConfig& config) {
  if (a_p.context()->p() != p) throw InvalidArgument("a_p lives over a different prime");
  if (a_p.is_zero()) throw ZeroAp("a_p must be nonzero");
  const Valuation v = a_p.require_finite_valuation();
  Prediction out;
  out.p = p;
  out.k = k;
  out.v = v;
  out.provenance = classify_slope(p, k, v, config);
  const FieldPtr& field = a_p.context()->field();
  const std::int64_t r = k - 2;

  switch (out.provenance) {
    case Provenance::THEOREM_BLZ:
    case Provenance::THEOREM_FE:
      out.rep = canonical_form(induced_label(field, k - 1));
      add_overlap_note(p, k, a_p, out);
      break;
    case Provenance::THEOREM_BREUIL:
      out.rep = breuil_weight_reduction(p, k, a_p);
      break;
    case Provenance::THEOREM_BG09: {
      const std::int64_t b = mod_floor(r - 1, p - 1) + 1;
      out.b = b;
      out.rep = induced_label(field, b + 1);
      break;
    }
    case Provenance::CAVEAT_ZONE: {
      const auto zp = zigzag_params(p, k, a_p);
      out.b = zp.b;
      out.tau = zp.tau;
      out.t = zp.t;
      out.caveat_m = caveat_zone(p, r, v, config.caveat_disk);
      out.notes.push_back("r is p-adically close to the small weight b + m(p-1) with m = " +
                          std::to_string(*out.caveat_m) + "; zig-zag may fail here");
      try {
        out.formal_zigzag = chotomy_or_degenerate(zp).second;
      } catch (const Error& e) {
        out.notes.push_back(std::string("formal zig-zag value unavailable: ") + e.what());
      }
      break;
    }
    case Provenance::THEOREM_BG13:
    case Provenance::THEOREM_BGR18:
    case Provenance::THEOREM_GR19:
    case Provenance::CONJECTURE_ZIGZAG: {
      const auto zp = zigzag_params(p, k, a_p);
      out.b = zp.b;
      out.tau = zp.tau;
      out.t = zp.t;
      auto [branch, rep] = chotomy_or_degenerate(zp);
      out.branch = branch;
      out.rep = rep;
      if (out.provenance == Provenance::CONJECTURE_ZIGZAG) {
        out.notes.push_back("conjectural: predicted by zig-zag, not proven");
      }
      break;
    }
    case Provenance::KNOWN_ELSEWHERE:
      out.notes.push_back("reduction determined in the literature; no formula is implemented here");
      break;
    case Provenance::UNKNOWN:
      out.notes.push_back("no theorem or conjecture covers this (k, slope)");
      break;
  }
  add_lag_notes(a_p, v, config, out);
  return out;
}

template <PadicScalar S>
GaloisRep breuil_impl(std::int64_t p, std::int64_t k, const S& a_p) {
  const Valuation v = a_p.require_finite_valuation();
  if (!in_breuil_table(p, k, v)) {
    throw NotInTable("(k, v) = (" + std::to_string(k) + ", " + v.to_string() + ") is not a tabulated Breuil weight");
  }
  const auto& ctx = a_p.context();
  const FieldPtr& field = ctx->field();
  if (k == p + 2) return induced_label(field, 2);
  if (k == p + 3) {
    const GFElem lambda = reduce(S::from_integer(ctx, 2) * a_p / p_power<S>(ctx, 1));
    return GaloisRep::reducible_pair(field, 2, ExtElem(lambda), 1);
  }
  if (k == p + 4 && v == kThreeHalves) return induced_label(field, p + 3);
  if (k == p + 5 && v == kTwo) return induced_label(field, p + 4);
  // k = 2p + 1, v = 1/2.
  const S shifted = a_p * a_p + p_power<S>(ctx, 1);
  if (shifted.valuation() < kThreeHalves) return induced_label(field, 2);
  const std::int64_t r = 2 * p - 1;
  const S c = compute_c(p, r, a_p, v);
  const UnramValue lambda = lambda_value(1, 1, r, c);
  return GaloisRep::reducible_pair(field, 1, lambda, 1);
}

}  // namespace

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::THEOREM_FE: return "THEOREM_FE";
    case Provenance::THEOREM_BREUIL: return "THEOREM_BREUIL";
    case Provenance::THEOREM_BLZ: return "THEOREM_BLZ";
    case Provenance::THEOREM_BG09: return "THEOREM_BG09";
    case Provenance::THEOREM_BG13: return "THEOREM_BG13";
    case Provenance::THEOREM_BGR18: return "THEOREM_BGR18";
    case Provenance::THEOREM_GR19: return "THEOREM_GR19";
    case Provenance::CONJECTURE_ZIGZAG: return "CONJECTURE_ZIGZAG";
    case Provenance::KNOWN_ELSEWHERE: return "KNOWN_ELSEWHERE";
    case Provenance::CAVEAT_ZONE: return "CAVEAT_ZONE";
    case Provenance::UNKNOWN: return "UNKNOWN";
  }
  return "UNKNOWN";
}

bool is_theorem(Provenance provenance) {
  switch (provenance) {
    case Provenance::THEOREM_FE:
    case Provenance::THEOREM_BREUIL:
    case Provenance::THEOREM_BLZ:
    case Provenance::THEOREM_BG09:
    case Provenance::THEOREM_BG13:
    case Provenance::THEOREM_BGR18:
    case Provenance::THEOREM_GR19:
      return true;
    default:
      return false;
  }
}

std::string Branch::to_string() const {
  return std::string(reducible ? "RED(" : "IRRED(") + std::to_string(index) + ")";
}

Valuation valuation_of(const ApValue& a_p) {
  return std::visit([](const auto& x) { return x.valuation(); }, a_p);
}

const ContextPtr& context_of(const ApValue& a_p) {
  return std::visit([](const auto& x) -> const ContextPtr& { return x.context(); }, a_p);
}

std::string to_string(const ApValue& a_p) {
  return std::visit([](const auto& x) { return x.to_string(); }, a_p);
}

std::pair<bool, std::int64_t> exceptional_class(std::int64_t p, std::int64_t k, Valuation v) {
  if (v.is_infinite() || v.twice() <= 0 || v.twice() > p - 1) {
    throw SlopeOutOfRange("slope " + v.to_string() + " is outside (0, (p-1)/2]");
  }
  const std::int64_t b = v.twice();
  return {mod_floor(k - 2 - b, p - 1) == 0, b};
}

std::pair<std::int64_t, std::int64_t> adjacent_integers(std::int64_t b) {
  const std::int64_t n = (b + 1) / 2;
  if (b % 2 == 1) return {n - 1, n};
  return {n - 1, n + 1};
}

BigInt binomial_product(std::int64_t r, std::int64_t b) {
  const auto [vm, vp_] = adjacent_integers(b);
  return binomial(r - vm, vp_) * binomial(r - vp_, vm);
}

Branch zigzag_branch(std::int64_t b, Valuation tau, Valuation t) {
  if (b < 1) throw InvalidArgument("b must be positive");
  if (t.is_infinite()) throw DegenerateT("t = v(r - b) is infinite");
  const std::int64_t n = (b + 1) / 2;
  const bool odd = b % 2 == 1;
  if (tau.is_infinite()) return odd ? Branch{true, n, true} : Branch{false, n, true};
  const Valuation delta = tau - t;
  if (delta.twice() < 0) return Branch{false, 0, false};
  const Valuation last = Valuation::integer(n - 1);
  if (odd && delta >= last) return Branch{true, n, true};
  if (!odd && delta > last) return Branch{false, n, true};
  const std::int64_t j = delta.floor();
  if (delta.is_integral()) return Branch{true, j + 1, !odd && j == n - 1};
  return Branch{false, j + 1, false};
}

GaloisRep induced_label(const FieldPtr& field, std::int64_t c) {
  const std::int64_t p = field->p();
  if (mod_floor(c, p + 1) == 0) {
    const std::int64_t m = c / (p + 1);
    return GaloisRep::reducible_pair(field, m, sqrt_minus_one(field), m);
  }
  return GaloisRep::irreducible(field, c);
}

GaloisRep branch_rep(const FieldPtr& field, std::int64_t b, const Branch& branch, const UnramValue& lambda) {
  const std::int64_t p = field->p();
  if (branch.reducible) return GaloisRep::reducible_pair(field, b - branch.index + 1, lambda, branch.index);
  return induced_label(field, b + 1 + branch.index * (p - 1));
}

bool lambda_is_known(std::int64_t i, std::int64_t b) { return i == 1 || (i == 2 && b == 3); }

GaloisRep formal_chotomy(const FieldPtr& field, std::int64_t b, Valuation tau, Valuation t) {
  const Branch branch = zigzag_branch(b, tau, t);
  UnramValue lambda = ExtElem(field->one());
  if (branch.reducible) lambda = UnknownValue{"*_" + std::to_string(branch.index)};
  return branch_rep(field, b, branch, lambda);
}

std::vector<Valuation> chotomy_region_offsets(std::int64_t b) {
  const std::int64_t n = (b + 1) / 2;
  std::vector<Valuation> out;
  for (std::int64_t h = -1; h <= 2 * (n - 1) + 1; ++h) out.push_back(Valuation::halves(h));
  return out;
}

Provenance classify_regime(std::int64_t p, std::int64_t k, const ApValue& a_p, const EngineConfig& config) {
  const bool zero = std::visit([](const auto& x) { return x.is_zero(); }, a_p);
  if (zero) throw ZeroAp("a_p must be nonzero");
  return classify_slope(p, k, valuation_of(a_p), config);
}

Prediction predict(std::int64_t p, std::int64_t k, const ApValue& a_p, const EngineConfig& config) {
  return std::visit([&](const auto& x) { return predict_impl(p, k, x, config); }, a_p);
}

bool berger_bound_holds(std::int64_t p, std::int64_t k, Valuation v) {
  return 2 * k > 3 * v.twice() + 2 * alpha(k - 1, p) + 2;
}

std::optional<std::int64_t> caveat_zone(std::int64_t p, std::int64_t r, Valuation v, int s0) {
  if (v.is_infinite() || v < kTwo) return std::nullopt;
  const std::int64_t b = v.twice();
  const std::int64_t modulus = ipow(p, s0) * (p - 1);
  const std::int64_t m_max = (v - kOne).floor();
  for (std::int64_t m = 1; m <= m_max; ++m) {
    if (mod_floor(r - b - m * (p - 1), modulus) == 0) return m;
  }
  return std::nullopt;
}

bool in_breuil_table(std::int64_t p, std::int64_t k, Valuation v) {
  return (k == p + 2 && v == kHalf) || (k == p + 3 && v == kOne) || (k == p + 4 && v == kThreeHalves) ||
         (k == p + 5 && v == kTwo) || (k == 2 * p + 1 && v == kHalf);
}

GaloisRep breuil_weight_reduction(std::int64_t p, std::int64_t k, const ApValue& a_p) {
  return std::visit([&](const auto& x) { return breuil_impl(p, k, x); }, a_p);
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::COMPATIBLE: return "COMPATIBLE";
    case Verdict::CONFLICT: return "CONFLICT";
    case Verdict::UNDECIDED: return "UNDECIDED";
  }
  return "UNDECIDED";
}

LocalConstancyReport local_constancy_conflict(std::int64_t p, std::int64_t k, const ApValue& a_p,
                                              std::int64_t t_prime, const EngineConfig& config) {
  if (t_prime < 1) throw InvalidArgument("t' must be a positive integer");
  LocalConstancyReport out;
  out.k = k;
  out.t_prime = t_prime;
  out.base = predict(p, k, a_p, config);
  if (!out.base.rep || !is_theorem(out.base.provenance)) {
    throw InvalidArgument("the base weight is not in an explicitly known regime");
  }
  out.k_nearby = k + ipow(p, static_cast<int>(t_prime)) * (p - 1);
  out.nearby = predict(p, out.k_nearby, a_p, config);
  out.berger_bound = berger_bound_holds(p, k, out.base.v);
  if (!out.nearby.rep || (config.strict && out.nearby.provenance == Provenance::CONJECTURE_ZIGZAG)) {
    out.verdict = Verdict::UNDECIDED;
  } else {
    out.verdict = equals_on_inertia(*out.base.rep, *out.nearby.rep) ? Verdict::COMPATIBLE : Verdict::CONFLICT;
  }
  return out;
}

std::string to_string(Consistency consistency) {
  return consistency == Consistency::CONSISTENT ? "CONSISTENT" : "INCONSISTENT";
}

BlzReport blz_consistency(std::int64_t p, std::int64_t b, std::int64_t m) {
  if (b < 1 || b > p - 1) throw InvalidArgument("b must lie in {1, ..., p-1}");
  if (m < 1) throw InvalidArgument("m must be positive");
  if (m % p == 0) throw InvalidArgument("m must be prime to p");
  if (b != 2 * m + 1 && b != 2 * m + 2) throw InvalidArgument("b must be 2m+1 or 2m+2");
  BlzReport out;
  out.p = p;
  out.b = b;
  out.m = m;
  out.r = b + m * (p - 1);
  out.v = Valuation::halves(b);
  const auto ctx = PadicContext::make(p, 2);
  const FieldPtr& field = ctx->field();
  const auto a_p = ExactQuadratic::uniformizer_power(ctx, b);
  const auto zp = zigzag_params(p, out.r + 2, a_p);
  out.tau = zp.tau;
  out.t = zp.t;
  out.kummer_divisible = binomial_valuation(out.r - zp.v_plus, zp.v_minus, p) > 0;
  out.boundary = b == p - 1;
  out.blz_rep = canonical_form(induced_label(field, out.r + 1));
  out.zigzag_rep = chotomy_prediction(zp).second;
  out.verdict = equals_on_inertia(out.blz_rep, out.zigzag_rep) ? Consistency::CONSISTENT : Consistency::INCONSISTENT;
  if (out.boundary) {
    out.notes.push_back("b = p-1: v does not exceed floor(r/(p-1)), so the BLZ hypothesis fails at this boundary");
  }
  const Valuation expected = b % 2 == 1 ? Valuation::halves(2 * m - 1) : Valuation::integer(m);
  if (out.kummer_divisible && out.tau != expected) {
    out.notes.push_back("unexpected tau = " + out.tau.to_string() + ", expected " + expected.to_string());
  }
  return out;
}

bool theta_compatibility(std::int64_t p, Valuation v) {
  if (v.is_infinite() || v.twice() < 1 || v.twice() > p - 1) {
    throw SlopeOutOfRange("slope " + v.to_string() + " is outside (0, (p-1)/2]");
  }
  const FieldPtr field = GaloisField::make(p, 2);
  const std::int64_t b = v.twice();
  const Valuation zero = Valuation::integer(0);
  const GaloisRep first = formal_chotomy(field, b, v - kOne, zero);
  const GaloisRep second = formal_chotomy(field, b + 2, v, zero);
  return equals_on_inertia(twist_by_omega(first, 1), second);
}

std::vector<IrreducibilityViolation> irreducibility_conjecture_scan(std::int64_t p, std::int64_t k_min,
                                                                    std::int64_t k_max,
                                                                    const std::vector<Valuation>& slopes,
                                                                    const EngineConfig& config) {
  std::vector<IrreducibilityViolation> out;
  const FieldPtr field = GaloisField::make(p, 2);
  const Valuation zero = Valuation::integer(0);
  for (std::int64_t b = 1; b <= p - 1; ++b) {
    for (std::int64_t k = std::max<std::int64_t>(k_min, b + 3); k <= k_max; ++k) {
      if (mod_floor(k - 2 - b, p - 1) != 0) continue;
      const bool scanned = k % 2 == 0 && b % 2 == 1;
      for (const Valuation& delta : chotomy_region_offsets(b)) {
        const GaloisRep rep = formal_chotomy(field, b, delta, zero);
        if (scanned && !rep.is_irreducible_variant()) {
          out.push_back({p, k, Valuation::halves(b), "chotomy region tau - t = " + delta.to_string() + ": " +
                                                          rep.to_string()});
        }
      }
    }
  }
  const auto ctx = PadicContext::make(p, 2);
  for (std::int64_t k = std::max<std::int64_t>(k_min, 2); k <= k_max; ++k) {
    if (k % 2 != 0) continue;
    for (const Valuation& v : slopes) {
      if (v.is_integral()) continue;
      Prediction pred;
      try {
        pred = predict(p, k, ExactQuadratic::uniformizer_power(ctx, v.twice()), config);
      } catch (const Error&) {
        continue;
      }
      if (pred.rep && !pred.rep->is_irreducible_variant()) {
        out.push_back({p, k, v, to_string(pred.provenance) + ": " + pred.rep->to_string()});
      }
    }
  }
  return out;
}

}  // namespace zigzag
