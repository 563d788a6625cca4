#include "zigzag/llc.hpp"

#include <algorithm>
#include <sstream>

#include "zigzag/valuation.hpp"

namespace zigzag {

namespace {

ExtElem ext_one(const FieldPtr& field) { return ExtElem(field->one()); }
ExtElem ext_zero(const FieldPtr& field) { return ExtElem(field->zero()); }

bool is_zero_value(const UnramValue& v) {
  const auto* e = std::get_if<ExtElem>(&v);
  return e != nullptr && e->is_zero();
}

bool is_one_value(const UnramValue& v) {
  const auto* e = std::get_if<ExtElem>(&v);
  return e != nullptr && e->re().is_one() && e->im().is_zero();
}

bool is_sign_value(const UnramValue& v) {
  const auto* e = std::get_if<ExtElem>(&v);
  if (e == nullptr || !e->in_base_field()) return false;
  return e->re().is_one() || (-e->re()).is_one();
}

UnramValue product(const UnramValue& a, const UnramValue& b) {
  return std::get<ExtElem>(a) * std::get<ExtElem>(b);
}

/// A square root of q in F_{p^{2f}} when one exists there.
std::optional<ExtElem> sqrt_in_extension(const ExtElem& q) {
  if (!q.in_base_field()) return std::nullopt;
  const GFElem base = q.re();
  if (auto root = base.sqrt()) return ExtElem(*root);
  // Every non-square of F_{p^f} is ν times a square, and y² = ν.
  const GFElem nu = base.field()->nonsquare();
  if (auto root = (base / nu).sqrt()) return ExtElem(base.field()->zero(), *root);
  return std::nullopt;
}

/// Writes λ₁ = λ·z and λ₂ = λ⁻¹·z; returns (λ, z).
std::pair<UnramValue, UnramValue> split_twist(const FieldPtr& field, const UnramValue& l1, const UnramValue& l2) {
  if (is_unknown(l1) || is_unknown(l2)) {
    if (l2 == inverse(l1)) return {l1, ext_one(field)};
    throw UnknownLambda("cannot separate the twist from symbolic values " + to_string(l1) + ", " + to_string(l2));
  }
  const ExtElem e1 = std::get<ExtElem>(l1);
  const ExtElem e2 = std::get<ExtElem>(l2);
  if (e1.is_zero() || e2.is_zero()) throw MalformedLabel("unramified characters need nonzero values");
  const ExtElem q = e1 * e2;
  if (q == ext_one(field)) return {e1, ext_one(field)};
  const auto z = sqrt_in_extension(q);
  if (!z) throw InvalidArgument("the twist of this representation is not defined over F_{p^{2f}}");
  return {e1 * z->inverse(), *z};
}

std::string twist_string(std::int64_t s, const UnramValue& z) {
  std::string out = s == 0 ? "1" : "w^" + std::to_string(s);
  if (!is_one_value(z)) out += "*mu_" + to_string(z);
  return out;
}

}  // namespace

std::int64_t bracket_normalize(std::int64_t p, std::int64_t x) { return mod_floor(x, p - 1); }

bool SmoothRepLabel::is_supersingular() const { return is_zero_value(lambda); }

bool SmoothRepLabel::is_irreducible(std::int64_t p) const {
  return !((r == 0 || r == p - 1) && is_sign_value(lambda));
}

std::vector<std::string> SmoothRepLabel::constituents(std::int64_t p) const {
  if (is_irreducible(p)) return {to_string()};
  // π(0, ±1, η)^ss = π(p−1, ±1, η)^ss = St ⊗ (μ_{±1}η ∘ det) ⊕ (μ_{±1}η ∘ det).
  const std::string chi = "(mu_" + zigzag::to_string(lambda) + "*" + twist_string(s, z) + ")";
  return {"St(x)" + chi + "(det)", chi + "(det)"};
}

std::string SmoothRepLabel::to_string() const {
  return "pi(" + std::to_string(r) + ", " + zigzag::to_string(lambda) + ", " + twist_string(s, z) + ")";
}

SmoothRepLabel smooth_label(const FieldPtr& field, std::int64_t r, UnramValue lambda, std::int64_t s) {
  if (r < 0 || r > field->p() - 1) throw InvalidArgument("r must lie in 0..p-1");
  return SmoothRepLabel{r, std::move(lambda), bracket_normalize(field->p(), s), ext_one(field)};
}

nlohmann::json to_json(const SmoothRepLabel& label) {
  return nlohmann::json{{"r", label.r}, {"lambda", to_string(label.lambda)}, {"s", label.s}, {"z", to_string(label.z)}};
}

SmoothRepLabel smooth_label_from_json(const FieldPtr& field, const nlohmann::json& j) {
  try {
    SmoothRepLabel label = smooth_label(field, j.at("r").get<std::int64_t>(),
                                        parse_unram(field, j.at("lambda").get<std::string>()),
                                        j.value("s", std::int64_t{0}));
    if (j.contains("z")) label.z = parse_unram(field, j.at("z").get<std::string>());
    return label;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad smooth representation label: ") + e.what());
  }
}

std::vector<SmoothRepLabel> ll_map(const GaloisRep& rep) {
  const FieldPtr& field = rep.field();
  const std::int64_t p = field->p();
  const GaloisRep canon = canonical_form(rep);
  std::vector<SmoothRepLabel> out;
  if (canon.is_irreducible_variant()) {
    is_irreducible_label(canon);
    const auto& irr = canon.as_irreducible();
    // c = (r+1) + s(p+1) with 1 ≤ r+1 ≤ p.
    const std::int64_t r = mod_floor(irr.c, p + 1) - 1;
    const std::int64_t s = (irr.c - (r + 1)) / (p + 1);
    out.push_back(SmoothRepLabel{r, ext_zero(field), bracket_normalize(p, s), irr.twist});
    return out;
  }
  const auto& sm = canon.as_reducible().summands;
  // (μ_λ ω^{r+1} ⊕ μ_{λ⁻¹}) ⊗ ω^{a₂}μ_z with r ∈ {0, …, p−2}.
  const auto [lambda, z] = split_twist(field, sm[0].lambda, sm[1].lambda);
  const std::int64_t r = bracket_normalize(p, sm[0].a - sm[1].a - 1);
  out.push_back(SmoothRepLabel{r, lambda, bracket_normalize(p, sm[1].a), z});
  out.push_back(SmoothRepLabel{bracket_normalize(p, p - 3 - r), inverse(lambda), bracket_normalize(p, sm[1].a + r + 1), z});
  std::sort(out.begin(), out.end());
  return out;
}

GaloisRep ll_inverse(const FieldPtr& field, const std::vector<SmoothRepLabel>& labels) {
  const std::int64_t p = field->p();
  std::optional<GaloisRep> candidate;
  if (labels.size() == 1 && labels[0].is_supersingular()) {
    const SmoothRepLabel& l = labels[0];
    candidate = GaloisRep::irreducible(field, (l.r + 1) + l.s * (p + 1), l.z);
  } else if (labels.size() == 2 && !labels[0].is_supersingular() && !labels[1].is_supersingular()) {
    const SmoothRepLabel& l = labels[0];
    if (is_unknown(l.z)) throw NotInImage("symbolic twist");
    const UnramValue l1 = is_unknown(l.lambda) ? l.lambda : product(l.lambda, l.z);
    const UnramValue l2 = is_unknown(l.lambda) ? inverse(l.lambda) : product(inverse(l.lambda), l.z);
    candidate = GaloisRep::reducible(field, l.r + 1 + l.s, l1, l.s, l2);
  }
  if (!candidate) throw NotInImage("expected one supersingular label or a pair of principal series labels");
  std::vector<SmoothRepLabel> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  std::vector<SmoothRepLabel> image;
  try {
    image = ll_map(*candidate);
  } catch (const Error&) {
    throw NotInImage("labels do not come from a Galois representation");
  }
  if (image != sorted) throw NotInImage("labels are not the dictionary image of a representation");
  return canonical_form(*candidate);
}

bool supersingular_equivalence(std::int64_t p, std::int64_t r, std::int64_t s, std::int64_t r_prime,
                               std::int64_t s_prime) {
  const FieldPtr field = GaloisField::make(p, 1);
  const GaloisRep a = GaloisRep::irreducible(field, (r + 1) + s * (p + 1));
  const GaloisRep b = GaloisRep::irreducible(field, (r_prime + 1) + s_prime * (p + 1));
  return equivalent(a, b);
}

// ---------------------------------------------------------------------------
// Patterns

std::string HeckePolynomial::to_string() const {
  if (kind == Kind::LINEAR) {
    if (is_zero_value(value)) return "T";
    return "T-(" + zigzag::to_string(value) + ")";
  }
  if (is_zero_value(value)) return "T^2+1";
  return "T^2-(" + zigzag::to_string(value) + ")T+1";
}

HeckePolynomial hecke_t(const FieldPtr& field) { return {HeckePolynomial::Kind::LINEAR, ext_zero(field)}; }
HeckePolynomial hecke_linear(UnramValue root) { return {HeckePolynomial::Kind::LINEAR, std::move(root)}; }
HeckePolynomial hecke_quadratic(UnramValue trace) { return {HeckePolynomial::Kind::QUADRATIC, std::move(trace)}; }

std::string FSlot::to_string() const {
  const std::string name = "F" + std::to_string(index);
  switch (kind) {
    case Kind::ZERO: return name + " = 0";
    case Kind::UNCONSTRAINED: return name + " unconstrained";
    case Kind::QUOTIENT_OF: break;
  }
  std::string out = name + " <<- ";
  for (std::size_t k = 0; k < quotient_of.size(); ++k) {
    if (k > 0) out += " and ";
    out += "ind J" + std::to_string(index) + "/(" + quotient_of[k].to_string() + ")";
  }
  return out;
}

const FSlot* FPattern::slot(std::int64_t index) const {
  for (const FSlot& s : slots) {
    if (s.index == index) return &s;
  }
  return nullptr;
}

std::string FPattern::to_string() const {
  std::string out = region + ":";
  for (const FSlot& s : slots) {
    if (s.kind == FSlot::Kind::ZERO) continue;
    out += " " + s.to_string() + ";";
  }
  return out;
}

FPattern jh_selection_table(const FieldPtr& field, std::int64_t b, Valuation delta,
                            const std::optional<UnramValue>& lambda) {
  const std::int64_t p = field->p();
  if (b < 1 || b > p - 1) throw IndexOutOfRange("b must lie in 1..p-1");
  const std::int64_t n = (b + 1) / 2;
  FPattern out{p, b, "", {}};
  const std::int64_t last = 2 * jh_max_index(b) + 1;
  for (std::int64_t i = 0; i <= last; ++i) out.slots.push_back(FSlot{i, FSlot::Kind::ZERO, {}});
  auto set = [&](std::int64_t i, HeckePolynomial poly) {
    out.slots[i].kind = FSlot::Kind::QUOTIENT_OF;
    out.slots[i].quotient_of.push_back(std::move(poly));
  };
  const Branch branch = zigzag_branch(b, delta, Valuation::integer(0));
  const std::int64_t i = branch.index;
  out.region = branch.to_string();
  if (!branch.reducible) {
    if (i == 0) {
      set(1, hecke_t(field));
    } else {
      set(2 * i, hecke_t(field));
      set(2 * i + 1, hecke_t(field));
    }
    return out;
  }
  const UnramValue lam = lambda.value_or(UnramValue(UnknownValue{"*_" + std::to_string(i)}));
  if (b % 2 == 1 && i == n) {
    UnramValue trace = UnknownValue{"d"};
    if (const auto* e = std::get_if<ExtElem>(&lam)) trace = *e + e->inverse();
    set(b, hecke_quadratic(trace));
  } else {
    set(2 * i - 1, hecke_linear(inverse(lam)));
    set(2 * i, hecke_linear(lam));
    if (b % 2 == 0 && i == n) set(2 * i + 1, hecke_linear(lam));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Slope 3/2

std::string Gr19Statement::to_string() const {
  std::string boundary = "t";
  if (offset.twice() != 0) boundary += "+" + offset.to_string();
  const std::string rel = relation < 0 ? "<" : relation == 0 ? "=" : ">";
  std::string out = "tau " + rel + " " + boundary + " =>";
  for (std::size_t k = 0; k < consequences.size(); ++k) {
    out += (k == 0 ? " " : " and ") + consequences[k].to_string();
  }
  return out;
}

Gr19Constraints gr19_constraints_at(const FieldPtr& field, Valuation delta, const std::optional<GFElem>& lambda1,
                                    const std::optional<GFElem>& d) {
  const std::int64_t p = field->p();
  Gr19Constraints out;
  out.lambda1 = lambda1;
  out.d = d;
  auto zero = [](std::int64_t i) { return FSlot{i, FSlot::Kind::ZERO, {}}; };
  auto quot = [](std::int64_t i, HeckePolynomial poly) { return FSlot{i, FSlot::Kind::QUOTIENT_OF, {poly}}; };
  const Valuation half = Valuation::halves(1);
  const Valuation one = Valuation::integer(1);
  const Valuation zero_offset = Valuation::integer(0);

  const bool at_t = delta == zero_offset;
  const bool at_t1 = delta == one;
  if (at_t && !lambda1) throw InvalidArgument("lambda_1 is required at tau = t");
  if (at_t1 && !d) throw InvalidArgument("d is required at tau = t+1");
  const UnramValue l1 = lambda1 ? UnramValue(ExtElem(*lambda1)) : UnramValue(UnknownValue{"lambda_1"});
  const UnramValue trace = d ? UnramValue(ExtElem(*d)) : UnramValue(UnknownValue{"d"});

  out.statements = {
      {zero_offset, +1, {zero(1)}, false},
      {zero_offset, 0, {quot(1, hecke_linear(inverse(l1))), quot(2, hecke_linear(l1))}, false},
      {zero_offset, -1, {zero(2)}, false},
      {half, +1, {zero(2)}, false},
      {half, 0, {quot(2, hecke_t(field)), quot(3, hecke_t(field))}, false},
      {half, -1, {zero(3)}, false},
      {one, +1, {quot(3, hecke_quadratic(ext_zero(field)))}, false},
      {one, 0, {quot(3, hecke_quadratic(trace))}, false},
      {one, -1, {quot(3, hecke_t(field))}, false},
  };
  FPattern pattern{p, 3, "", {}};
  pattern.slots.push_back(zero(0));
  for (std::int64_t i = 1; i <= 3; ++i) pattern.slots.push_back(FSlot{i, FSlot::Kind::UNCONSTRAINED, {}});
  for (Gr19Statement& st : out.statements) {
    const int cmp = delta < st.offset ? -1 : delta == st.offset ? 0 : 1;
    st.applies = cmp == st.relation;
    if (!st.applies) continue;
    for (const FSlot& c : st.consequences) {
      FSlot& target = pattern.slots[c.index];
      if (target.kind == FSlot::Kind::ZERO) continue;
      if (c.kind == FSlot::Kind::ZERO) {
        target = zero(c.index);
        continue;
      }
      target.kind = FSlot::Kind::QUOTIENT_OF;
      for (const HeckePolynomial& poly : c.quotient_of) {
        if (std::find(target.quotient_of.begin(), target.quotient_of.end(), poly) == target.quotient_of.end()) {
          target.quotient_of.push_back(poly);
        }
      }
    }
  }
  std::ostringstream region;
  region << "tau - t = " << delta.to_string();
  pattern.region = region.str();
  out.pattern = std::move(pattern);
  return out;
}

Gr19Constraints gr19_constraints(std::int64_t p, std::int64_t r, const ApValue& a_p) {
  if (p < 5) throw InvalidArgument("the slope 3/2 statements need p >= 5");
  if (r <= 3) throw InvalidArgument("the slope 3/2 statements need r > 3");
  return std::visit(
      [&](const auto& ap) {
        const auto zp = zigzag_params(p, r + 2, ap);
        if (zp.b != 3 || !zp.exceptional) throw InvalidArgument("not in the slope 3/2 exceptional setting");
        if (zp.t.is_infinite()) throw DegenerateT("r = b");
        const Valuation delta = zp.tau - zp.t;
        std::optional<GFElem> lambda1;
        std::optional<GFElem> d;
        using S = std::decay_t<decltype(ap)>;
        const auto& ctx = ap.context();
        auto as_s = [&](std::int64_t x) { return S::from_integer(ctx, x); };
        if (!zp.tau.is_infinite() && zp.tau == zp.t) lambda1 = reduce(as_s(3) / as_s(3 - r) * *zp.c);
        if (zp.tau.is_infinite() || zp.tau >= zp.t + Valuation::integer(1)) {
          d = reduce(as_s(2) * *zp.c / (as_s(2 - r) * as_s(3 - r) * p_power<S>(ctx, 1)));
        }
        Gr19Constraints out = gr19_constraints_at(ctx->field(), delta, lambda1, d);
        out.p = p;
        out.r = r;
        out.tau = zp.tau;
        out.t = zp.t;
        return out;
      },
      a_p);
}

// ---------------------------------------------------------------------------
// Cross-check

namespace {

bool module_matches(std::int64_t p, const SmoothRepLabel& label, const GammaModuleLabel& j) {
  if (!is_one_value(label.z)) return false;
  if (label.is_supersingular()) return supersingular_equivalence(p, label.r, label.s, j.m, j.s);
  if (label.s != j.s) return false;
  if (label.r == j.m) return true;
  // π(0, λ, η) and π(p−1, λ, η) share their semisimplification.
  return (label.r == 0 && j.m == p - 1) || (label.r == p - 1 && j.m == 0);
}

bool linear_matches(const SmoothRepLabel& label, const HeckePolynomial& poly) {
  return poly.kind == HeckePolynomial::Kind::LINEAR && poly.value == label.lambda;
}

bool quadratic_pair_matches(const SmoothRepLabel& a, const SmoothRepLabel& b, const HeckePolynomial& poly) {
  if (poly.kind != HeckePolynomial::Kind::QUADRATIC) return false;
  if (a.is_supersingular() || b.is_supersingular()) return false;
  if (b.lambda != inverse(a.lambda)) return false;
  if (is_unknown(poly.value)) return true;
  if (is_unknown(a.lambda)) return false;
  const ExtElem la = std::get<ExtElem>(a.lambda);
  return la + la.inverse() == std::get<ExtElem>(poly.value);
}

bool single_fits(std::int64_t p, std::int64_t b, const SmoothRepLabel& label, const FSlot& slot) {
  if (slot.kind == FSlot::Kind::ZERO) return false;
  if (!module_matches(p, label, jh_factor(p, b, slot.index))) return false;
  if (slot.kind == FSlot::Kind::UNCONSTRAINED) return true;
  return std::all_of(slot.quotient_of.begin(), slot.quotient_of.end(),
                     [&](const HeckePolynomial& poly) { return linear_matches(label, poly); });
}

bool pair_fits(std::int64_t p, std::int64_t b, const SmoothRepLabel& x, const SmoothRepLabel& y, const FSlot& slot) {
  if (slot.kind == FSlot::Kind::ZERO) return false;
  const GammaModuleLabel j = jh_factor(p, b, slot.index);
  if (!module_matches(p, x, j) || !module_matches(p, y, j)) return false;
  if (slot.kind == FSlot::Kind::UNCONSTRAINED) return y.lambda == inverse(x.lambda);
  return std::all_of(slot.quotient_of.begin(), slot.quotient_of.end(),
                     [&](const HeckePolynomial& poly) { return quadratic_pair_matches(x, y, poly); });
}

}  // namespace

bool llc_cross_check(const GaloisRep& rep, const FPattern& pattern) {
  std::vector<SmoothRepLabel> labels;
  try {
    labels = ll_map(rep);
  } catch (const Error&) {
    return false;
  }
  const std::int64_t p = pattern.p;
  const std::int64_t b = pattern.b;
  if (labels.size() == 1) {
    return std::any_of(pattern.slots.begin(), pattern.slots.end(),
                       [&](const FSlot& s) { return single_fits(p, b, labels[0], s); });
  }
  for (const FSlot& s : pattern.slots) {
    if (pair_fits(p, b, labels[0], labels[1], s)) return true;
  }
  for (const FSlot& s1 : pattern.slots) {
    for (const FSlot& s2 : pattern.slots) {
      if (s1.index == s2.index) continue;
      if (single_fits(p, b, labels[0], s1) && single_fits(p, b, labels[1], s2)) return true;
    }
  }
  return false;
}

bool llc_cross_check(const Prediction& prediction, const FPattern& pattern) {
  if (!prediction.rep) return false;
  return llc_cross_check(*prediction.rep, pattern);
}

}  // namespace zigzag
