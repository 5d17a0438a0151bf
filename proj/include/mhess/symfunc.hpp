#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mhess/symmatrix.hpp"

namespace mhess {

// Elementary symmetric polynomials e_0..e_n of the given values,
// accumulated by the product-expansion recursion.
std::vector<double> elementary_symmetric(std::span<const double> x);

// m-trace T_m(S): the sum of all m x m principal minors of S.
// Computed from the eigenvalues of S; T_0 = 1, T_n = det S.
double m_trace(const SymMatrix& s, int m);

// Same quantity from an explicit eigenvalue list.
double m_trace_from_eigenvalues(std::span<const double> lambda, int m);

// All traces T_0..T_n at once.
struct TraceVector {
  std::vector<double> values;  // size n+1, values[0] == 1
  double operator[](int m) const { return values[static_cast<std::size_t>(m)]; }
  int order() const { return static_cast<int>(values.size()) - 1; }
};
TraceVector trace_vector(const SymMatrix& s);

// Alternative route: Faddeev-LeVerrier-style matrix recursion. Returns
// T_0..T_n; if gradients != nullptr it also receives the n gradient
// matrices dT_m/dS for m = 1..n.
std::vector<double> traces_faddeev_leverrier(const SymMatrix& s,
                                             std::vector<SymMatrix>* gradients = nullptr);

// Gradient matrix dT_m/ds_ij (entries treated as independent). Its diagonal
// entry (i,i) is the (m-1)-trace of S with row and column i deleted, and
// sum_ij (dT_m/ds_ij) s_ij = m T_m(S).
SymMatrix m_trace_gradient(const SymMatrix& s, int m);

// (m-1)-trace of S with row and column i deleted.
double deleted_trace(const SymMatrix& s, int m, int i);

// Strictness threshold for cone membership: the cone is defined by strict
// inequalities, so floating point needs a scale-aware cutoff.
double cone_threshold(const SymMatrix& s, int m);

struct ConeVerdict {
  int m = 0;
  bool member = false;
  std::optional<int> first_failure;  // first p <= m with T_p below threshold
  double margin = 0.0;               // min over p = 1..m of T_p(S)
};

// Membership in the cone K_m = {S : T_p(S) > 0, p = 1..m}.
ConeVerdict cone_membership(const SymMatrix& s, int m);

// T_m(S) / T_l(S); requires S in K_m (so T_l > 0).
double quotient(const SymMatrix& s, int m, int l);

// Gradient of the quotient, (T_m^ij T_l - T_m T_l^ij) / T_l^2.
// Positive definite on K_m.
SymMatrix quotient_gradient(const SymMatrix& s, int m, int l);

// (T_l/C(n,l))^{1/l} - (T_m/C(n,m))^{1/m}; nonnegative on K_m and zero only
// at multiples of the identity.
double maclaurin_margin(const SymMatrix& s, int l, int m);

// T_{m,l}(S + S0) - T_{m,l}(S) for PSD S0 != 0; strictly positive on K_m.
double monotonicity_margin(const SymMatrix& s, const SymMatrix& s0, int m, int l);

}  // namespace mhess
