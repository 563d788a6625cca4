#include "zigzag/galois_rep.hpp"

#include <algorithm>

#include "zigzag/errors.hpp"
#include "zigzag/valuation.hpp"

namespace zigzag {

namespace {

std::int64_t cyclic_order(const FieldPtr& field) { return field->p() * field->p() - 1; }

UnramValue one_of(const FieldPtr& field) { return ExtElem(field->one()); }

}  // namespace

GaloisRep GaloisRep::irreducible(const FieldPtr& field, std::int64_t c) {
  return irreducible(field, c, one_of(field));
}

GaloisRep GaloisRep::irreducible(const FieldPtr& field, std::int64_t c, UnramValue twist) {
  return GaloisRep(field, IrreducibleRep{mod_floor(c, cyclic_order(field)), std::move(twist)});
}

GaloisRep GaloisRep::reducible(const FieldPtr& field, std::int64_t a1, UnramValue lambda1, std::int64_t a2,
                               UnramValue lambda2) {
  const std::int64_t m = field->p() - 1;
  ReducibleRep rep;
  rep.summands.push_back({mod_floor(a1, m), std::move(lambda1)});
  rep.summands.push_back({mod_floor(a2, m), std::move(lambda2)});
  return GaloisRep(field, std::move(rep));
}

GaloisRep GaloisRep::reducible_pair(const FieldPtr& field, std::int64_t a1, const UnramValue& lambda,
                                    std::int64_t a2) {
  return reducible(field, a1, lambda, a2, inverse(lambda));
}

std::string GaloisRep::to_string() const {
  if (is_irreducible_variant()) {
    const auto& irr = as_irreducible();
    std::string out = "ind(w2^" + std::to_string(irr.c) + ")";
    const auto* z = std::get_if<ExtElem>(&irr.twist);
    if (z == nullptr || !z->re().is_one() || !z->in_base_field()) out += "*mu_[" + zigzag::to_string(irr.twist) + "]";
    return out;
  }
  std::string out;
  for (const auto& s : as_reducible().summands) {
    if (!out.empty()) out += " + ";
    out += "mu_[" + zigzag::to_string(s.lambda) + "]*w^" + std::to_string(s.a);
  }
  return out;
}

GaloisRep canonical_form(const GaloisRep& rep) {
  const FieldPtr& field = rep.field();
  if (rep.is_irreducible_variant()) {
    const auto& irr = rep.as_irreducible();
    const std::int64_t n = cyclic_order(field);
    const std::int64_t c = mod_floor(irr.c, n);
    const std::int64_t conj = mod_floor(c * field->p(), n);
    return GaloisRep::irreducible(field, std::min(c, conj), irr.twist);
  }
  auto summands = rep.as_reducible().summands;
  std::sort(summands.begin(), summands.end());
  return GaloisRep::reducible(field, summands[0].a, summands[0].lambda, summands[1].a, summands[1].lambda);
}

bool equivalent(const GaloisRep& a, const GaloisRep& b) { return canonical_form(a) == canonical_form(b); }

bool equals_on_inertia(const GaloisRep& a, const GaloisRep& b) {
  if (a.p() != b.p() || a.is_irreducible_variant() != b.is_irreducible_variant()) return false;
  const GaloisRep ca = canonical_form(a);
  const GaloisRep cb = canonical_form(b);
  if (ca.is_irreducible_variant()) return ca.as_irreducible().c == cb.as_irreducible().c;
  const auto& sa = ca.as_reducible().summands;
  const auto& sb = cb.as_reducible().summands;
  std::vector<std::int64_t> ea{sa[0].a, sa[1].a};
  std::vector<std::int64_t> eb{sb[0].a, sb[1].a};
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

std::int64_t inertial_determinant(const GaloisRep& rep) {
  const std::int64_t m = rep.p() - 1;
  if (rep.is_irreducible_variant()) return mod_floor(rep.as_irreducible().c, m);
  const auto& s = rep.as_reducible().summands;
  return mod_floor(s[0].a + s[1].a, m);
}

GaloisRep twist_by_omega(const GaloisRep& rep, std::int64_t j) {
  const FieldPtr& field = rep.field();
  if (rep.is_irreducible_variant()) {
    const auto& irr = rep.as_irreducible();
    return canonical_form(GaloisRep::irreducible(field, irr.c + j * (field->p() + 1), irr.twist));
  }
  const auto& s = rep.as_reducible().summands;
  return canonical_form(GaloisRep::reducible(field, s[0].a + j, s[0].lambda, s[1].a + j, s[1].lambda));
}

bool is_irreducible_label(const GaloisRep& rep) {
  if (!rep.is_irreducible_variant()) return false;
  if (rep.as_irreducible().c % (rep.p() + 1) == 0) {
    throw MalformedLabel("ind(w2^" + std::to_string(rep.as_irreducible().c) + ") with (p+1) | c is reducible");
  }
  return true;
}

nlohmann::json to_json(const GaloisRep& rep) {
  nlohmann::json j;
  if (rep.is_irreducible_variant()) {
    j["kind"] = "irred";
    j["c"] = rep.as_irreducible().c;
    j["z"] = to_string(rep.as_irreducible().twist);
    return j;
  }
  j["kind"] = "red";
  j["summands"] = nlohmann::json::array();
  for (const auto& s : rep.as_reducible().summands) {
    j["summands"].push_back({{"a", s.a}, {"lambda", to_string(s.lambda)}});
  }
  return j;
}

GaloisRep galois_rep_from_json(const FieldPtr& field, const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "irred") {
      UnramValue z = ExtElem(field->one());
      if (j.contains("z")) z = parse_unram(field, j.at("z").get<std::string>());
      return GaloisRep::irreducible(field, j.at("c").get<std::int64_t>(), z);
    }
    if (kind == "red") {
      const auto& s = j.at("summands");
      if (s.size() != 2) throw ParseError("reducible label needs exactly two summands");
      return GaloisRep::reducible(field, s[0].at("a").get<std::int64_t>(),
                                  parse_unram(field, s[0].at("lambda").get<std::string>()),
                                  s[1].at("a").get<std::int64_t>(),
                                  parse_unram(field, s[1].at("lambda").get<std::string>()));
    }
    throw ParseError("unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace zigzag
