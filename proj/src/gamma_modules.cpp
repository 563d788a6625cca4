#include "zigzag/gamma_modules.hpp"

#include <algorithm>

#include "zigzag/errors.hpp"
#include "zigzag/valuation.hpp"

namespace zigzag {

namespace {

using Poly = std::vector<std::int64_t>;

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
  }
  return out;
}

Poly poly_pow(const Poly& a, std::int64_t e, std::int64_t p) {
  Poly out{1};
  for (std::int64_t k = 0; k < e; ++k) out = poly_mul(out, a, p);
  return out;
}

/// Remainder of a modulo the monic polynomial m (coefficients low to high).
Poly poly_rem_monic(Poly a, const Poly& m, std::int64_t p) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t top = a.size(); top-- > dm;) {
    const std::int64_t lead = a[top];
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) {
      a[top - dm + j] = mod_floor(a[top - dm + j] - lead * m[j], p);
    }
  }
  a.resize(std::min(a.size(), dm));
  return a;
}

std::int64_t primitive_root(std::int64_t p) {
  for (std::int64_t g = 1; g < p; ++g) {
    std::int64_t x = 1;
    std::int64_t order = 0;
    do {
      x = (x * g) % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) return g;
  }
  return 1;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
}

}  // namespace

ModMatrix reduce_mod(ModMatrix m, std::int64_t p) {
  return m.unaryExpr([p](std::int64_t x) { return mod_floor(x, p); });
}

std::int64_t rank_mod_p(ModMatrix m, std::int64_t p) {
  m = reduce_mod(std::move(m), p);
  std::int64_t rank = 0;
  for (Eigen::Index col = 0; col < m.cols() && rank < m.rows(); ++col) {
    Eigen::Index pivot = rank;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.row(pivot).swap(m.row(rank));
    const std::int64_t inv = inverse_mod(m(rank, col), p);
    m.row(rank) = m.row(rank).unaryExpr([&](std::int64_t x) { return (x * inv) % p; });
    for (Eigen::Index row = 0; row < m.rows(); ++row) {
      if (row == rank || m(row, col) == 0) continue;
      const std::int64_t factor = m(row, col);
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        m(row, j) = mod_floor(m(row, j) - factor * m(rank, j), p);
      }
    }
    ++rank;
  }
  return rank;
}

ModMatrix matmul_mod(const ModMatrix& a, const ModMatrix& b, std::int64_t p) {
  return reduce_mod(a * b, p);
}

Gl2 gl2_mul(const Gl2& g, const Gl2& h, std::int64_t p) {
  return Gl2{mod_floor(g.a * h.a + g.b * h.c, p), mod_floor(g.a * h.b + g.b * h.d, p),
             mod_floor(g.c * h.a + g.d * h.c, p), mod_floor(g.c * h.b + g.d * h.d, p)};
}

std::int64_t gl2_det(const Gl2& g, std::int64_t p) { return mod_floor(g.a * g.d - g.b * g.c, p); }

std::vector<Gl2> gamma_generators(std::int64_t p) {
  require_prime(p);
  return {Gl2{1, 1, 0, 1}, Gl2{0, 1, 1, 0}, Gl2{primitive_root(p), 0, 0, 1}};
}

Gl2 random_word(std::int64_t p, std::mt19937_64& rng, int length) {
  const auto gens = gamma_generators(p);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  Gl2 g;
  for (int k = 0; k < length; ++k) g = gl2_mul(g, gens[pick(rng)], p);
  return g;
}

std::string GammaModuleLabel::to_string() const {
  std::string out = "V_" + std::to_string(m);
  if (s != 0) out += "(x)D^" + std::to_string(s);
  return out;
}

ConcreteModule::ConcreteModule(std::int64_t p, std::int64_t r) : p_(p), r_(r) {
  require_prime(p);
  if (r < 0) throw InvalidArgument("degree must be nonnegative");
}

ModMatrix ConcreteModule::action(const Gl2& g) const { return sym_power_action(r_, g, p_); }

ModMatrix sym_power_action(std::int64_t r, const Gl2& g, std::int64_t modulus) {
  // Polynomials of degree r are stored by their Y-exponent.
  const Poly x_image{mod_floor(g.a, modulus), mod_floor(g.c, modulus)};
  const Poly y_image{mod_floor(g.b, modulus), mod_floor(g.d, modulus)};
  std::vector<Poly> x_powers{Poly{1 % modulus}};
  std::vector<Poly> y_powers{Poly{1 % modulus}};
  for (std::int64_t k = 1; k <= r; ++k) {
    x_powers.push_back(poly_mul(x_powers.back(), x_image, modulus));
    y_powers.push_back(poly_mul(y_powers.back(), y_image, modulus));
  }
  ModMatrix out = ModMatrix::Zero(r + 1, r + 1);
  for (std::int64_t j = 0; j <= r; ++j) {
    const Poly image = poly_mul(x_powers[r - j], y_powers[j], modulus);
    for (std::int64_t k = 0; k <= r; ++k) out(k, j) = image[k];
  }
  return out;
}

std::vector<std::int64_t> theta_power(std::int64_t p, std::int64_t i) {
  Poly theta(p + 2, 0);
  theta[1] = 1;
  theta[p] = p - 1;
  return poly_pow(theta, i, p);
}

ModMatrix theta_multiplication(std::int64_t p, std::int64_t r, std::int64_t i) {
  const std::int64_t d = r - i * (p + 1);
  if (i < 0 || d < 0) throw InvalidArgument("theta^i does not fit in degree r");
  const Poly t = theta_power(p, i);
  ModMatrix out = ModMatrix::Zero(r + 1, d + 1);
  for (std::int64_t j = 0; j <= d; ++j) {
    for (std::size_t k = 0; k < t.size(); ++k) out(j + static_cast<std::int64_t>(k), j) = t[k];
  }
  return out;
}

ModMatrix theta_divisibility_map(std::int64_t p, std::int64_t r, std::int64_t i) {
  if (i < 0) throw InvalidArgument("i must be nonnegative");
  require_prime(p);
  // In X-degree order P(X, 1) = Σ_j c_j X^{r−j}; Y^i | P means c_0 = … = c_{i−1} = 0.
  Poly modulus(p + 1, 0);
  modulus[1] = p - 1;
  modulus[p] = 1;
  modulus = poly_pow(modulus, i, p);
  const std::int64_t rem_size = static_cast<std::int64_t>(modulus.size()) - 1;
  const std::int64_t y_rows = std::min(i, r + 1);
  ModMatrix out = ModMatrix::Zero(y_rows + rem_size, r + 1);
  for (std::int64_t j = 0; j <= r; ++j) {
    if (j < y_rows) out(j, j) = 1;
    Poly monomial(r - j + 1, 0);
    monomial[r - j] = 1;
    const Poly rem = poly_rem_monic(monomial, modulus, p);
    for (std::size_t k = 0; k < rem.size(); ++k) out(y_rows + static_cast<std::int64_t>(k), j) = rem[k];
  }
  return out;
}

std::int64_t dim_theta_filtration(std::int64_t p, std::int64_t r, std::int64_t i) {
  if (i == 0) return r + 1;
  return (r + 1) - rank_mod_p(theta_divisibility_map(p, r, i), p);
}

std::int64_t dim_theta_filtration_formula(std::int64_t p, std::int64_t r, std::int64_t i) {
  return std::max<std::int64_t>(0, r - i * (p + 1) + 1);
}

SubquotientCheck check_subquotient_iso(std::int64_t p, std::int64_t r, std::int64_t i, int random_words) {
  SubquotientCheck out;
  const ModMatrix m = theta_multiplication(p, r, i);
  const std::int64_t d = r - i * (p + 1);
  out.injective = rank_mod_p(m, p) == d + 1;
  const ModMatrix divisibility = theta_divisibility_map(p, r, i);
  out.image_is_divisible_part =
      matmul_mod(divisibility, m, p).isZero() && dim_theta_filtration(p, r, i) == d + 1;

  const ConcreteModule big(p, r);
  const ConcreteModule small(p, d);
  std::vector<Gl2> elements = gamma_generators(p);
  std::mt19937_64 rng(static_cast<std::uint64_t>(p * 1000003 + r * 1009 + i));
  for (int k = 0; k < random_words; ++k) elements.push_back(random_word(p, rng, 12));
  out.equivariant = true;
  for (const Gl2& g : elements) {
    const std::int64_t twist = pow_mod(gl2_det(g, p), static_cast<std::uint64_t>(i), p);
    const ModMatrix lhs = matmul_mod(big.action(g), m, p);
    const ModMatrix rhs = reduce_mod(twist * matmul_mod(m, small.action(g), p), p);
    if (lhs != rhs) {
      out.equivariant = false;
      break;
    }
  }
  return out;
}

bool verify_subquotient_iso(std::int64_t p, std::int64_t r, std::int64_t i) {
  return check_subquotient_iso(p, r, i).ok();
}

std::int64_t jh_max_index(std::int64_t b) { return b % 2 == 1 ? (b + 1) / 2 - 1 : b / 2; }

std::pair<GammaModuleLabel, GammaModuleLabel> jh_factor_labels(std::int64_t p, std::int64_t b, std::int64_t i) {
  require_prime(p);
  if (b < 1 || b > p - 1) throw IndexOutOfRange("b = " + std::to_string(b) + " outside 1..p-1");
  if (i < 0 || i > jh_max_index(b)) {
    throw IndexOutOfRange("i = " + std::to_string(i) + " outside 0.." + std::to_string(jh_max_index(b)));
  }
  GammaModuleLabel even{b - 2 * i, mod_floor(i, p - 1), false};
  GammaModuleLabel odd{p - 1 - b + 2 * i, mod_floor(b - i, p - 1), false};
  odd.projective = b % 2 == 0 && i == b / 2;
  return {even, odd};
}

GammaModuleLabel jh_factor(std::int64_t p, std::int64_t b, std::int64_t j) {
  if (j < 0) throw IndexOutOfRange("negative JH index");
  const auto pair = jh_factor_labels(p, b, j / 2);
  return j % 2 == 0 ? pair.first : pair.second;
}

bool DimensionReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const DimensionCheck& c) { return c.passed; });
}

DimensionReport column_and_diagonal_sums(std::int64_t p, std::int64_t b) {
  DimensionReport report{p, b, {}};
  const std::int64_t last = jh_max_index(b);
  for (std::int64_t i = 0; i <= last; ++i) {
    const auto [even, odd] = jh_factor_labels(p, b, i);
    report.checks.push_back({"column " + std::to_string(i) + ": dim J" + std::to_string(2 * i) + " + dim J" +
                                 std::to_string(2 * i + 1) + " = p+1",
                             even.dimension() + odd.dimension() == p + 1});
    if (i < last) {
      const GammaModuleLabel next = jh_factor(p, b, 2 * i + 2);
      report.checks.push_back({"diagonal " + std::to_string(i) + ": dim J" + std::to_string(2 * i + 1) +
                                   " + dim J" + std::to_string(2 * i + 2) + " = p-1",
                               odd.dimension() + next.dimension() == p - 1});
    }
  }
  const std::int64_t n = (b + 1) / 2;
  const GammaModuleLabel j_last = jh_factor(p, b, 2 * n - 1);
  if (b % 2 == 1) {
    const GammaModuleLabel expected{p - 2, mod_floor(n, p - 1), false};
    report.checks.push_back({"J" + std::to_string(2 * n - 1) + " = V_{p-2}(x)D^n", j_last == expected});
    report.checks.push_back({"2 dim J" + std::to_string(2 * n - 1) + " = 0 mod p-1",
                             mod_floor(2 * j_last.dimension(), p - 1) == 0});
  } else {
    const std::int64_t half = b / 2;
    const GammaModuleLabel expected{p - 3, mod_floor(half + 1, p - 1), false};
    report.checks.push_back({"J" + std::to_string(b - 1) + " = V_{p-3}(x)D^{n+1}", j_last == expected});
    const GammaModuleLabel with_trivial = jh_factor(p, b, b);
    const GammaModuleLabel with_projective = jh_factor(p, b, b + 1);
    report.checks.push_back({"J" + std::to_string(b) + " = V_0(x)D^n",
                             with_trivial == GammaModuleLabel{0, mod_floor(half, p - 1), false}});
    report.checks.push_back({"J" + std::to_string(b + 1) + " = V_{p-1}(x)D^n projective",
                             with_projective == GammaModuleLabel{p - 1, mod_floor(half, p - 1), false} &&
                                 with_projective.projective});
    report.checks.push_back({"dim J" + std::to_string(b - 1) + " + dim J" + std::to_string(b) + " = 0 mod p-1",
                             mod_floor(j_last.dimension() + with_trivial.dimension(), p - 1) == 0});
    report.checks.push_back({"dim J" + std::to_string(b - 1) + " + dim J" + std::to_string(b + 1) +
                                 " = 0 mod p-1",
                             mod_floor(j_last.dimension() + with_projective.dimension(), p - 1) == 0});
  }
  return report;
}

}  // namespace zigzag
