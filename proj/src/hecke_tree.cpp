#include "zigzag/hecke_tree.hpp"

#include <algorithm>
#include <sstream>

#include "zigzag/errors.hpp"
#include "zigzag/padic.hpp"

namespace zigzag {

namespace {

BigRational rational_power(std::int64_t p, std::int64_t e) {
  BigInt base = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e < 0 ? -e : e));
  return e >= 0 ? BigRational(base) : BigRational(BigInt(1), base);
}

std::int64_t valuation_int(const BigRational& q, std::int64_t p) {
  return vp_int(numerator(q), p) - vp_int(denominator(q), p);
}

std::string rational_string(const BigRational& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

/// Splits a nonzero q as p^e·u with u a p-adic unit.
std::pair<std::int64_t, BigRational> split_unit(const BigRational& q, std::int64_t p) {
  const std::int64_t e = valuation_int(q, p);
  return {e, q / rational_power(p, e)};
}

RationalMatrix diag(const BigRational& x, const BigRational& y) { return RationalMatrix{x, 0, 0, y}; }

std::vector<std::int64_t> teichmuller_integers(std::int64_t p, int precision) {
  const auto ctx = PadicContext::make(p, 1, precision);
  const UnramifiedRing ring(ctx, precision);
  std::vector<std::int64_t> out;
  for (std::int64_t lambda = 0; lambda < p; ++lambda) {
    out.push_back(ring.teichmuller(ctx->field()->from_int(lambda))[0]);
  }
  return out;
}

void require_degree_zero(const TreeFunction& f) {
  if (f.degree() != 0) throw WrongDegree("the functional is defined for r = 0 only, got r = " + std::to_string(f.degree()));
}

}  // namespace

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  return RationalMatrix{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

std::string RationalMatrix::to_string() const {
  return "(" + rational_string(a) + ", " + rational_string(b) + "; " + rational_string(c) + ", " +
         rational_string(d) + ")";
}

std::strong_ordering TreeVertex::operator<=>(const TreeVertex& o) const {
  if (a != o.a) return a <=> o.a;
  if (c < o.c) return std::strong_ordering::less;
  if (o.c < c) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

RationalMatrix TreeVertex::matrix(std::int64_t p) const { return RationalMatrix{rational_power(p, a), c, 0, 1}; }

std::int64_t TreeVertex::distance(std::int64_t p) const {
  std::int64_t m = std::min<std::int64_t>(a, 0);
  if (c != 0) m = std::min(m, valuation_int(c, p));
  return a - 2 * m;
}

std::string TreeVertex::to_string() const { return "(p^" + std::to_string(a) + ", " + rational_string(c) + ")"; }

CosetDecomposition decompose_coset(std::int64_t p, const RationalMatrix& g) {
  if (g.det() == 0) throw SingularMatrix("matrix " + g.to_string() + " is not invertible");
  // Invariant: g = m · k · p^central; column operations on m are right
  // multiplications by elements of GL₂(Z_p).
  RationalMatrix m = g;
  RationalMatrix k;
  std::int64_t central = 0;
  auto apply = [&](const RationalMatrix& s, const RationalMatrix& s_inv) {
    m = m * s;
    k = s_inv * k;
  };
  const bool gamma_smaller =
      m.c != 0 && (m.d == 0 || valuation_int(m.c, p) < valuation_int(m.d, p));
  if (gamma_smaller) {
    const RationalMatrix swap{0, 1, 1, 0};
    apply(swap, swap);
  }
  if (m.c != 0) {
    const BigRational t = m.c / m.d;
    apply(RationalMatrix{1, 0, -t, 1}, RationalMatrix{1, 0, t, 1});
  }
  const auto [e, u] = split_unit(m.d, p);
  central += e;
  const BigRational scale = rational_power(p, -e);
  m = RationalMatrix{m.a * scale, m.b * scale, m.c * scale, m.d * scale};
  apply(diag(1, 1 / u), diag(1, u));
  const auto [a, w] = split_unit(m.a, p);
  apply(diag(1 / w, 1), diag(w, 1));

  const BigRational beta = m.b;
  BigRational c = 0;
  if (beta != 0) {
    const std::int64_t shift = std::max<std::int64_t>(0, -valuation_int(beta, p));
    const std::int64_t digits = a + shift;
    if (digits > 0) {
      const BigRational scaled = beta * rational_power(p, shift);
      c = BigRational(rational_mod(scaled, p, ipow(p, static_cast<int>(digits)))) / rational_power(p, shift);
    }
  }
  const BigRational t = (beta - c) / rational_power(p, a);
  apply(RationalMatrix{1, -t, 0, 1}, RationalMatrix{1, t, 0, 1});
  return CosetDecomposition{TreeVertex{a, c}, k, central};
}

TreeVertex normalize_coset(std::int64_t p, const RationalMatrix& g) { return decompose_coset(p, g).vertex; }

std::int64_t CoefficientRing::modulus() const { return ipow(p, precision); }

std::string CoefficientRing::to_string() const {
  return "W_" + std::to_string(precision) + "(F_" + std::to_string(p) + "^" + std::to_string(degree) + ")";
}

TreeFunction::TreeFunction(CoefficientRing ring, std::int64_t r) : ring_(ring), r_(r) {
  if (!is_prime(ring.p)) throw InvalidArgument(std::to_string(ring.p) + " is not prime");
  if (ring.precision < 1 || ring.degree < 1) throw InvalidArgument("coefficient ring needs M >= 1 and f >= 1");
  if (r < 0) throw InvalidArgument("degree must be nonnegative");
}

TreeFunction TreeFunction::elementary(CoefficientRing ring, std::int64_t r, const TreeVertex& vertex,
                                      const ModMatrix& v) {
  TreeFunction f(ring, r);
  f.add(vertex, v);
  return f;
}

ModMatrix TreeFunction::value(const TreeVertex& vertex) const {
  const auto it = values_.find(vertex);
  if (it == values_.end()) return ModMatrix::Zero(r_ + 1, ring_.degree);
  return it->second;
}

void TreeFunction::add(const TreeVertex& vertex, const ModMatrix& v) {
  if (v.rows() != r_ + 1 || v.cols() != ring_.degree) throw InvalidArgument("value has the wrong shape");
  const ModMatrix sum = reduce_mod(value(vertex) + v, ring_.modulus());
  if (sum.isZero()) {
    values_.erase(vertex);
  } else {
    values_[vertex] = sum;
  }
}

TreeFunction TreeFunction::operator+(const TreeFunction& o) const {
  if (!(ring_ == o.ring_) || r_ != o.r_) throw InvalidArgument("functions live in different spaces");
  TreeFunction out = *this;
  for (const auto& [vertex, v] : o.values_) out.add(vertex, v);
  return out;
}

TreeFunction TreeFunction::scaled(std::int64_t n) const {
  TreeFunction out(ring_, r_);
  for (const auto& [vertex, v] : values_) out.add(vertex, v * mod_floor(n, ring_.modulus()));
  return out;
}

bool TreeFunction::operator==(const TreeFunction& o) const {
  return ring_ == o.ring_ && r_ == o.r_ && values_ == o.values_;
}

ModMatrix integral_action(std::int64_t r, const RationalMatrix& k, std::int64_t p, std::int64_t modulus) {
  const Gl2 g{rational_mod(k.a, p, modulus), rational_mod(k.b, p, modulus), rational_mod(k.c, p, modulus),
              rational_mod(k.d, p, modulus)};
  return sym_power_action(r, g, modulus);
}

TreeFunction apply_T(const TreeFunction& f) {
  const std::int64_t p = f.p();
  const std::int64_t r = f.degree();
  const std::int64_t modulus = f.ring().modulus();
  const auto lifts = teichmuller_integers(p, f.ring().precision);
  TreeFunction out(f.ring(), r);
  auto push = [&](const RationalMatrix& g, const ModMatrix& v) {
    const CosetDecomposition dec = decompose_coset(p, g);
    out.add(dec.vertex, matmul_mod(integral_action(r, dec.k, p, modulus), v, modulus));
  };
  for (const auto& [vertex, v] : f.values()) {
    const RationalMatrix g = vertex.matrix(p);
    for (const std::int64_t lift : lifts) {
      const ModMatrix substituted = matmul_mod(sym_power_action(r, Gl2{1, -lift, 0, p}, modulus), v, modulus);
      push(g * RationalMatrix{p, lift, 0, 1}, substituted);
    }
    push(g * RationalMatrix{1, 0, 0, p}, matmul_mod(sym_power_action(r, Gl2{p, 0, 0, 1}, modulus), v, modulus));
  }
  return out;
}

TreeFunction apply_T_power(const TreeFunction& f, int times) {
  TreeFunction out = f;
  for (int k = 0; k < times; ++k) out = apply_T(out);
  return out;
}

TreeFunction g_act(const RationalMatrix& g, const TreeFunction& f) {
  const std::int64_t p = f.p();
  const std::int64_t modulus = f.ring().modulus();
  TreeFunction out(f.ring(), f.degree());
  for (const auto& [vertex, v] : f.values()) {
    const CosetDecomposition dec = decompose_coset(p, g * vertex.matrix(p));
    out.add(dec.vertex, matmul_mod(integral_action(f.degree(), dec.k, p, modulus), v, modulus));
  }
  return out;
}

ModMatrix total_sum_functional(const TreeFunction& f) {
  require_degree_zero(f);
  ModMatrix sum = ModMatrix::Zero(1, f.ring().degree);
  for (const auto& [vertex, v] : f.values()) sum += v;
  return reduce_mod(sum, f.ring().modulus());
}

ModMatrix alternating_sum_functional(const TreeFunction& f) {
  require_degree_zero(f);
  ModMatrix sum = ModMatrix::Zero(1, f.ring().degree);
  for (const auto& [vertex, v] : f.values()) {
    if (vertex.distance(f.p()) % 2 == 0) {
      sum += v;
    } else {
      sum -= v;
    }
  }
  return reduce_mod(sum, f.ring().modulus());
}

std::int64_t support_radius(const TreeFunction& f) {
  std::int64_t radius = 0;
  for (const auto& [vertex, v] : f.values()) radius = std::max(radius, vertex.distance(f.p()));
  return radius;
}

nlohmann::json to_json(const TreeFunction& f) {
  nlohmann::json support = nlohmann::json::array();
  for (const auto& [vertex, v] : f.values()) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < v.cols(); ++j) row.push_back(v(i, j));
      rows.push_back(row);
    }
    support.push_back({{"a", vertex.a},
                       {"c", rational_string(vertex.c)},
                       {"distance", vertex.distance(f.p())},
                       {"value", rows}});
  }
  return nlohmann::json{{"p", f.p()},
                        {"r", f.degree()},
                        {"ring", {{"M", f.ring().precision}, {"f", f.ring().degree}}},
                        {"radius", support_radius(f)},
                        {"support", support}};
}

}  // namespace zigzag
