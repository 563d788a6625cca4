#pragma once

#include <array>
#include <cstdint>

#include "zigzag/padic.hpp"

namespace zigzag {

/// The weakly admissible filtered φ-module D_{k,a_p} = E e1 ⊕ E e2 with
/// φ(e1) = p^{k−1} e2, φ(e2) = −e1 + a_p e2 and Fil^i = E e1 for 1 ≤ i ≤ k−1.
template <PadicScalar S>
class FilteredPhiModule {
 public:
  FilteredPhiModule(std::int64_t k, S a_p) : k_(k), a_p_(std::move(a_p)) {
    if (k_ < 2) throw InvalidWeight("k must be at least 2, got " + std::to_string(k_));
  }

  std::int64_t p() const { return a_p_.context()->p(); }
  std::int64_t weight() const { return k_; }
  const S& a_p() const { return a_p_; }

  /// Matrix of φ in the basis (e1, e2), row-major; columns are φ(e1), φ(e2).
  std::array<S, 4> phi_matrix() const {
    const auto& ctx = a_p_.context();
    return {S::from_integer(ctx, 0), S::from_integer(ctx, -1), p_power<S>(ctx, k_ - 1), a_p_};
  }

  S determinant() const {
    const auto m = phi_matrix();
    return m[0] * m[3] - m[1] * m[2];
  }

  S trace() const { return a_p_; }

  /// dim_E Fil^i.
  int filtration_dimension(std::int64_t i) const {
    if (i <= 0) return 2;
    if (i <= k_ - 1) return 1;
    return 0;
  }

 private:
  std::int64_t k_;
  S a_p_;
};

/// True iff v(a_p) > 0. With the Hodge filtration above, a φ-stable line
/// other than Fil^1 is weakly admissible exactly when φ has a unit
/// eigenvalue, which happens iff a_p is a unit.
template <PadicScalar S>
bool is_positive_slope_irreducible(const FilteredPhiModule<S>& m) {
  if (m.a_p().is_zero()) throw ZeroAp("a_p must be nonzero");
  return m.a_p().require_finite_valuation() > Valuation::integer(0);
}

}  // namespace zigzag
