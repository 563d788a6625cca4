#include "zigzag/residue_field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

#include "zigzag/errors.hpp"
#include "zigzag/valuation.hpp"

namespace zigzag {

namespace {

using Poly = std::vector<std::int64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over F_p.
Poly poly_rem(Poly a, const Poly& b, std::int64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::int64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = mod_floor(a[shift + i] - lead * b[i], p);
    }
    trim(a);
  }
  return a;
}

Poly monic_from_index(std::int64_t index, int degree, std::int64_t p) {
  Poly g(static_cast<std::size_t>(degree) + 1, 0);
  for (int i = 0; i < degree; ++i) {
    g[static_cast<std::size_t>(i)] = index % p;
    index /= p;
  }
  g.back() = 1;
  return g;
}

bool is_irreducible(const Poly& g, std::int64_t p) {
  const int f = static_cast<int>(g.size()) - 1;
  for (int d = 1; 2 * d <= f; ++d) {
    const std::int64_t count = ipow(p, d);
    for (std::int64_t idx = 0; idx < count; ++idx) {
      if (poly_rem(g, monic_from_index(idx, d, p), p).empty()) return false;
    }
  }
  return true;
}

std::int64_t least_nonresidue(std::int64_t p) {
  for (std::int64_t q = 2; q < p; ++q) {
    if (pow_mod(q, static_cast<std::uint64_t>((p - 1) / 2), p) == p - 1) return q;
  }
  throw InvalidArgument("no quadratic non-residue");
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

GaloisField::GaloisField(std::int64_t p, int f, std::vector<std::int64_t> modulus)
    : p_(p), f_(f), order_(ipow(p, f)), modulus_(std::move(modulus)) {}

std::shared_ptr<const GaloisField> GaloisField::make(std::int64_t p, int f) {
  if (!is_prime(p) || p == 2) throw InvalidArgument("p must be an odd prime");
  if (f < 1) throw InvalidArgument("residue degree must be ≥ 1");
  static std::mutex mutex;
  static std::map<std::pair<std::int64_t, int>, std::shared_ptr<const GaloisField>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find({p, f}); it != cache.end()) return it->second;

  Poly modulus;
  if (f == 1) {
    modulus = {0, 1};
  } else if (f == 2) {
    modulus = {mod_floor(-least_nonresidue(p), p), 0, 1};
  } else {
    const std::int64_t count = ipow(p, f);
    for (std::int64_t idx = 0; idx < count; ++idx) {
      Poly g = monic_from_index(idx, f, p);
      if (g[0] != 0 && is_irreducible(g, p)) {
        modulus = std::move(g);
        break;
      }
    }
  }
  std::shared_ptr<const GaloisField> field(new GaloisField(p, f, std::move(modulus)));
  cache.emplace(std::make_pair(p, f), field);
  return field;
}

GFElem GaloisField::zero() const { return from_int(0); }
GFElem GaloisField::one() const { return from_int(1); }

GFElem GaloisField::from_int(std::int64_t n) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(f_), 0);
  c[0] = mod_floor(n, p_);
  return GFElem(shared_from_this(), std::move(c));
}

GFElem GaloisField::from_coeffs(std::vector<std::int64_t> c) const {
  Poly reduced = poly_rem(std::move(c), modulus_, p_);
  reduced.resize(static_cast<std::size_t>(f_), 0);
  for (auto& x : reduced) x = mod_floor(x, p_);
  return GFElem(shared_from_this(), std::move(reduced));
}

GFElem GaloisField::generator() const {
  if (f_ == 1) return primitive_element();
  std::vector<std::int64_t> c(static_cast<std::size_t>(f_), 0);
  c[1] = 1;
  return GFElem(shared_from_this(), std::move(c));
}

GFElem GaloisField::element(std::int64_t index) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(f_), 0);
  for (int i = 0; i < f_; ++i) {
    c[static_cast<std::size_t>(i)] = index % p_;
    index /= p_;
  }
  return GFElem(shared_from_this(), std::move(c));
}

GFElem GaloisField::primitive_element() const {
  const std::int64_t n = order_ - 1;
  const auto factors = prime_factors(n);
  for (std::int64_t idx = 2; idx < order_; ++idx) {
    const GFElem g = element(idx);
    const bool generates = std::all_of(factors.begin(), factors.end(), [&](std::int64_t l) {
      return !g.pow(static_cast<std::uint64_t>(n / l)).is_one();
    });
    if (generates) return g;
  }
  return one();  // F_3: the only unit ≠ 1 is 2, reached above; F_2 excluded.
}

GFElem GaloisField::nonsquare() const {
  for (std::int64_t idx = 2; idx < order_; ++idx) {
    const GFElem g = element(idx);
    if (!g.is_zero() && !g.is_square()) return g;
  }
  throw InvalidArgument("field has no non-square");
}

GFElem GaloisField::parse(std::string_view text) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(f_) + 8, 0);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> std::optional<std::int64_t> {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) return std::nullopt;
    return std::stoll(std::string(text.substr(start, pos - start)));
  };
  int sign = 1;
  skip();
  if (pos < text.size() && text[pos] == '-') {
    sign = -1;
    ++pos;
  }
  while (true) {
    std::int64_t coeff = 1;
    std::size_t power = 0;
    auto n = read_int();
    if (n) coeff = *n;
    skip();
    if (n && pos < text.size() && text[pos] == '*') {
      ++pos;
      skip();
    }
    if (pos < text.size() && text[pos] == 'x') {
      ++pos;
      power = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        auto e = read_int();
        if (!e) throw ParseError("expected exponent in field literal '" + std::string(text) + "'");
        power = static_cast<std::size_t>(*e);
      }
    } else if (!n) {
      throw ParseError("bad field literal '" + std::string(text) + "'");
    }
    if (power >= c.size()) c.resize(power + 1, 0);
    c[power] += sign * coeff;
    skip();
    if (pos >= text.size()) break;
    if (text[pos] == '+') {
      sign = 1;
    } else if (text[pos] == '-') {
      sign = -1;
    } else {
      throw ParseError("unexpected character in field literal '" + std::string(text) + "'");
    }
    ++pos;
  }
  for (auto& x : c) x = mod_floor(x, p_);
  return from_coeffs(std::move(c));
}

// ---------------------------------------------------------------------------

GFElem::GFElem(FieldPtr field, std::vector<std::int64_t> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {}

bool GFElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
}

bool GFElem::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t GFElem::index() const {
  std::int64_t idx = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) idx = idx * field_->p() + *it;
  return idx;
}

GFElem GFElem::operator+(const GFElem& o) const {
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c_[i] + o.c_[i], field_->p());
  return GFElem(field_, std::move(c));
}

GFElem GFElem::operator-(const GFElem& o) const {
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c_[i] - o.c_[i], field_->p());
  return GFElem(field_, std::move(c));
}

GFElem GFElem::operator-() const { return field_->zero() - *this; }

GFElem GFElem::operator*(const GFElem& o) const {
  const std::int64_t p = field_->p();
  std::vector<std::int64_t> prod(c_.size() * 2, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      prod[i + j] = (prod[i + j] + c_[i] * o.c_[j]) % p;
    }
  }
  return field_->from_coeffs(std::move(prod));
}

GFElem GFElem::pow(std::uint64_t e) const {
  GFElem result = field_->one();
  GFElem base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

GFElem GFElem::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of zero in residue field");
  return pow(static_cast<std::uint64_t>(field_->order() - 2));
}

GFElem GFElem::operator/(const GFElem& o) const { return *this * o.inverse(); }

GFElem GFElem::scaled(std::int64_t n) const { return *this * field_->from_int(n); }

bool GFElem::is_square() const {
  if (is_zero()) return true;
  return pow(static_cast<std::uint64_t>((field_->order() - 1) / 2)).is_one();
}

std::optional<GFElem> GFElem::sqrt() const {
  if (is_zero()) return *this;
  if (!is_square()) return std::nullopt;
  // Tonelli–Shanks in F_q^×.
  const std::int64_t q = field_->order();
  std::int64_t odd = q - 1;
  int s = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }
  const GFElem z = field_->nonsquare();
  GFElem c = z.pow(static_cast<std::uint64_t>(odd));
  GFElem x = pow(static_cast<std::uint64_t>((odd + 1) / 2));
  GFElem t = pow(static_cast<std::uint64_t>(odd));
  int m = s;
  while (!t.is_one()) {
    int i = 0;
    GFElem t2 = t;
    while (!t2.is_one()) {
      t2 = t2 * t2;
      ++i;
    }
    GFElem b = c;
    for (int j = 0; j < m - i - 1; ++j) b = b * b;
    x = x * b;
    c = b * b;
    t = t * c;
    m = i;
  }
  const GFElem other = -x;
  return other < x ? other : x;
}

std::string GFElem::to_string() const {
  std::string out = std::to_string(c_.empty() ? 0 : c_[0]);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    out += "+" + std::to_string(c_[i]) + "*x";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

ExtElem::ExtElem(GFElem a) : a_(std::move(a)), b_(a_.field()->zero()) {}
ExtElem::ExtElem(GFElem a, GFElem b) : a_(std::move(a)), b_(std::move(b)) {}

ExtElem ExtElem::operator+(const ExtElem& o) const { return {a_ + o.a_, b_ + o.b_}; }
ExtElem ExtElem::operator-(const ExtElem& o) const { return {a_ - o.a_, b_ - o.b_}; }

ExtElem ExtElem::operator*(const ExtElem& o) const {
  const GFElem nu = field()->nonsquare();
  return {a_ * o.a_ + nu * b_ * o.b_, a_ * o.b_ + b_ * o.a_};
}

ExtElem ExtElem::inverse() const {
  const GFElem nu = field()->nonsquare();
  const GFElem norm = a_ * a_ - nu * b_ * b_;
  const GFElem inv = norm.inverse();
  return {a_ * inv, -(b_ * inv)};
}

std::strong_ordering ExtElem::operator<=>(const ExtElem& o) const {
  if (auto c = b_.index() <=> o.b_.index(); c != 0) return c;
  return a_.index() <=> o.a_.index();
}

std::string ExtElem::to_string() const {
  if (in_base_field()) return a_.to_string();
  return "(" + a_.to_string() + ")+(" + b_.to_string() + ")*y";
}

ExtElem ExtElem::parse(const FieldPtr& field, std::string_view text) {
  const auto ypos = text.find(")*y");
  if (ypos == std::string_view::npos) return ExtElem(field->parse(text));
  // "(A)+(B)*y"
  const auto split = text.find(")+(");
  if (text.empty() || text.front() != '(' || split == std::string_view::npos) {
    throw ParseError("bad extension literal '" + std::string(text) + "'");
  }
  const auto a = text.substr(1, split - 1);
  const auto b = text.substr(split + 3, ypos - split - 3);
  return {field->parse(a), field->parse(b)};
}

std::pair<ExtElem, ExtElem> reciprocal_pair_with_trace(const GFElem& d) {
  const FieldPtr& field = d.field();
  const GFElem two_inv = field->from_int(2).inverse();
  const GFElem disc = d * d - field->from_int(4);
  ExtElem r1;
  ExtElem r2;
  if (auto s = disc.sqrt()) {
    r1 = ExtElem((d + *s) * two_inv);
    r2 = ExtElem((d - *s) * two_inv);
  } else {
    const auto s2 = (disc / field->nonsquare()).sqrt();
    const GFElem half_s = *s2 * two_inv;
    r1 = ExtElem(d * two_inv, half_s);
    r2 = ExtElem(d * two_inv, -half_s);
  }
  if (r2 < r1) std::swap(r1, r2);
  return {r1, r2};
}

std::string to_string(const UnramValue& v) {
  if (const auto* e = std::get_if<ExtElem>(&v)) return e->to_string();
  return "unknown(" + std::get<UnknownValue>(v).tag + ")";
}

UnramValue parse_unram(const FieldPtr& field, std::string_view text) {
  if (text.rfind("unknown", 0) == 0) {
    std::string tag;
    const auto open = text.find('(');
    if (open != std::string_view::npos && text.back() == ')') {
      tag = std::string(text.substr(open + 1, text.size() - open - 2));
    }
    return UnknownValue{tag};
  }
  return ExtElem::parse(field, text);
}

bool is_unknown(const UnramValue& v) { return std::holds_alternative<UnknownValue>(v); }

UnramValue inverse(const UnramValue& v) {
  if (const auto* e = std::get_if<ExtElem>(&v)) return e->inverse();
  const std::string& tag = std::get<UnknownValue>(v).tag;
  const std::string suffix = "^-1";
  if (tag.size() >= suffix.size() && tag.compare(tag.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return UnknownValue{tag.substr(0, tag.size() - suffix.size())};
  }
  return UnknownValue{tag + suffix};
}

}  // namespace zigzag
