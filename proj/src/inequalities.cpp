#include "mhess/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mhess/admissibility.hpp"
#include "mhess/solver.hpp"

namespace mhess {

namespace {

constexpr double kMaxExtremalResidual = 1e-5;
constexpr double kInvarianceTol = 1e-10;

double effective_tol(const ToleranceModel& tm, double h, double residual, double lhs,
                     double rhs) {
  return tm(h, residual) * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

InequalityReport make_report(std::string name, int m, int l, double lhs, double rhs,
                             double margin, std::string orientation, double tol,
                             std::string inputs) {
  InequalityReport r;
  r.name = std::move(name);
  r.m = m;
  r.l = l;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = margin;
  r.orientation = std::move(orientation);
  r.tolerance = tol;
  r.pass = margin >= -tol;
  r.inputs = std::move(inputs);
  return r;
}

// Carrier adapters: every check below is written once against this surface.
struct RadialCtx {
  const RadialFunction& u;
  const RadialExtremal& ex;

  int n() const { return ex.n; }
  int m() const { return ex.m; }
  int l() const { return ex.l; }
  double h() const { return ex.w.spacing(); }
  double residual() const { return ex.residual; }
  const std::string& provenance() const { return ex.provenance; }

  bool u_admissible() const { return grid_admissibility(u, ex.n, ex.m).admissible; }
  bool u_zero_boundary() const {
    return std::abs(u.boundary_value()) <= 1e-12 * std::max(1.0, u.max_abs());
  }
  double I_u(int p) const { return hessian_integral(u, ex.n, p); }
  double I_w(int p) const { return hessian_integral(ex.w, ex.n, p); }
  double int_u() const { return integral(u, ex.n); }
  double int_w() const { return integral(ex.w, ex.n); }
  double int_u_hess_w(int p) const {
    return integral_product(u, radial_m_hessian(ex.w, ex.n, p), ex.n);
  }
  double q_uu(int p) const { return weighted_inner_product(u, u, p, ex.w, ex.n); }
  double q_uw(int p) const { return weighted_inner_product(u, ex.w, p, ex.w, ex.n); }
  double q_ww(int p) const { return weighted_inner_product(ex.w, ex.w, p, ex.w, ex.n); }
  double q_uw_scaled(int p, double mu) const {
    const RadialFunction wm = mu * ex.w;
    return weighted_inner_product(u, wm, p, wm, ex.n);
  }
  double q_ww_scaled(int p, double mu) const {
    const RadialFunction wm = mu * ex.w;
    return weighted_inner_product(wm, wm, p, wm, ex.n);
  }
  double int_minus_w_scaled(double mu) const { return -mu * int_w(); }
};

struct GridCtx {
  const GridFunction2D& u;
  const GridExtremal& ex;

  int n() const { return 2; }
  int m() const { return ex.m; }
  int l() const { return ex.l; }
  double h() const { return ex.w.grid().dr(); }
  double residual() const { return ex.residual; }
  const std::string& provenance() const { return ex.provenance; }

  bool u_admissible() const { return grid_admissibility(u, ex.m).admissible; }
  bool u_zero_boundary() const {
    return u.boundary_max_abs() <= 1e-12 * std::max(1.0, u.max_abs());
  }
  double I_u(int p) const { return hessian_integral(u, p); }
  double I_w(int p) const { return hessian_integral(ex.w, p); }
  double int_u() const { return integral(u); }
  double int_w() const { return integral(ex.w); }
  double int_u_hess_w(int p) const { return integral_product(u, m_hessian_field(ex.w, p)); }
  double q_uu(int p) const { return weighted_inner_product(u, u, p, ex.w); }
  double q_uw(int p) const { return weighted_inner_product(u, ex.w, p, ex.w); }
  double q_ww(int p) const { return weighted_inner_product(ex.w, ex.w, p, ex.w); }
  double q_uw_scaled(int p, double mu) const {
    const GridFunction2D wm = mu * ex.w;
    return weighted_inner_product(u, wm, p, wm);
  }
  double q_ww_scaled(int p, double mu) const {
    const GridFunction2D wm = mu * ex.w;
    return weighted_inner_product(wm, wm, p, wm);
  }
  double int_minus_w_scaled(double mu) const { return -mu * int_w(); }
};

template <class Ctx>
void require_extremal(const Ctx& c, const char* who) {
  require(c.residual() <= kMaxExtremalResidual,
          std::string(who) + ": extremal residual too large");
}

template <class Ctx>
InequalityReport poincare_core(const Ctx& c, const ToleranceModel& tm) {
  require_extremal(c, "check_poincare");
  if (!c.u_admissible())
    throw std::domain_error("check_poincare: u is not admissible for order m");
  const int m = c.m(), l = c.l();
  const double imu = c.I_u(m), ilu = c.I_u(l);
  const double imw = c.I_w(m), ilw = c.I_w(l);
  if (imu <= 0.0 || ilu <= 0.0 || imw <= 0.0 || ilw <= 0.0)
    throw std::domain_error("check_poincare: nonpositive Hessian integral");
  const double lhs = std::pow(imu / imw, 1.0 / (m + 1));
  const double rhs = std::pow(ilu / ilw, 1.0 / (l + 1));
  const double tol = effective_tol(tm, c.h(), c.residual(), lhs, rhs);
  return make_report("poincare", m, l, lhs, rhs, lhs - rhs, "lhs-rhs", tol, c.provenance());
}

template <class Ctx>
InequalityReport isoperimetric_core(const Ctx& c, const ToleranceModel& tm) {
  require_extremal(c, "check_isoperimetric");
  if (!c.u_admissible())
    throw std::domain_error("check_isoperimetric: u is not admissible for order m");
  const int m = c.m(), l = c.l();
  const double imu = c.I_u(m), ilu = c.I_u(l), imw = c.I_w(m);
  if (imu <= 0.0 || ilu <= 0.0 || imw <= 0.0)
    throw std::domain_error("check_isoperimetric: nonpositive Hessian integral");
  // rescale u so that I_l = 1, using (m+1)/(l+1)-homogeneity
  const double lhs = imu / std::pow(ilu, double(m + 1) / double(l + 1));
  const double rhs = std::pow(imw, double(l - m) / double(l + 1));
  const double tol = effective_tol(tm, c.h(), c.residual(), lhs, rhs);
  return make_report("isoperimetric", m, l, lhs, rhs, lhs - rhs, "lhs-rhs", tol,
                     c.provenance());
}

template <class Ex>
InequalityReport composition_core(const Ex& w_ml, const Ex& w_mp, const Ex& w_pl,
                                  double im_ml, double im_mp, double il_pl, double h,
                                  const ToleranceModel& tm) {
  const int m = w_ml.m, l = w_ml.l, p = w_mp.l;
  require(w_mp.m == m && w_pl.m == p && w_pl.l == l,
          "check_composition: inconsistent (m, p, l) triple");
  require(l < p && p < m, "check_composition: need l < p < m");
  const double res =
      std::max({w_ml.residual, w_mp.residual, w_pl.residual});
  require(res <= kMaxExtremalResidual, "check_composition: extremal residual too large");
  const double lhs = std::pow(im_ml, double(m - l));
  const double rhs = std::pow(im_mp, double(l + 1) / double(p + 1) * double(m - p)) *
                     std::pow(il_pl, double(m + 1) / double(p + 1) * double(p - l));
  const double tol = effective_tol(tm, h, res, lhs, rhs);
  return make_report("composition", m, l, lhs, rhs, lhs - rhs, "lhs-rhs", tol,
                     w_ml.provenance + "|" + w_mp.provenance + "|" + w_pl.provenance);
}

template <class Ctx>
InequalityReport anpo_core(const Ctx& c, const ToleranceModel& tm, const char* name) {
  require_extremal(c, name);
  require(c.u_zero_boundary(), std::string(name) + ": u must vanish on the boundary");
  const int m = c.m(), l = c.l();
  const double imw = c.I_w(m);
  const double a = c.int_u_hess_w(m);
  const double lhs = (double(m - l) / imw) * a * a + c.q_uu(l);
  const double rhs = c.q_uu(m);
  const double tol = effective_tol(tm, c.h(), c.residual(), lhs, rhs);
  return make_report(name, m, l, lhs, rhs, rhs - lhs, "rhs-lhs", tol, c.provenance());
}

template <class Ctx>
InequalityReport zero_l_core(const Ctx& c, const ToleranceModel& tm) {
  require(c.l() == 0, "check_zero_l: extremal must solve the l = 0 equation");
  require_extremal(c, "check_zero_l");
  require(c.u_zero_boundary(), "check_zero_l: u must vanish on the boundary");
  const int m = c.m();
  const double b = c.int_u();
  const double lhs = m * b * b;
  const double rhs = -c.int_w() * c.q_uu(m);
  const double tol = effective_tol(tm, c.h(), c.residual(), lhs, rhs);
  return make_report("zero_l", m, 0, lhs, rhs, rhs - lhs, "rhs-lhs", tol, c.provenance());
}

template <class Ctx>
InequalityReport p2_core(const Ctx& c, const ToleranceModel& tm) {
  const int n = c.n();
  require(c.m() == n && c.l() == 1, "check_p2: extremal must solve the m = n, l = 1 equation");
  require_extremal(c, "check_p2");
  require(c.u_zero_boundary(), "check_p2: u must vanish on the boundary");
  const double dirichlet_w = c.q_ww(1);  // integral of |grad w|^2
  const double a1 = c.int_u_hess_w(1);   // integral of u (Laplacian of w)
  const double lhs = (double(n - 1) / dirichlet_w) * a1 * a1 + c.q_uu(1);
  const double rhs = c.q_uu(n);  // cofactor form of the top-order gradient
  const double tol = effective_tol(tm, c.h(), c.residual(), lhs, rhs);
  return make_report("p2", n, 1, lhs, rhs, rhs - lhs, "rhs-lhs", tol, c.provenance());
}

// Quotient <u,w>_p / <w,w>_p; at p = 0 both inner products vanish, so the
// integration-by-parts limit -int(u T_p[w]) / I_p[w] is used instead.
template <class Ctx>
double dilation_ratio(const Ctx& c, int p) {
  if (p == 0) return -c.int_u() / (-c.int_w());
  return c.q_uw(p) / c.q_ww(p);
}

template <class Ctx>
double dilation_ratio_scaled(const Ctx& c, int p, double mu) {
  if (p == 0) return -c.int_u() / c.int_minus_w_scaled(mu);
  return c.q_uw_scaled(p, mu) / c.q_ww_scaled(p, mu);
}

template <class Ctx>
InequalityReport dilation_core(const Ctx& c, double mu, const ToleranceModel& tm) {
  require_extremal(c, "check_dilation_invariance");
  require(c.u_zero_boundary(), "check_dilation_invariance: u must vanish on the boundary");
  require(mu > 0.0, "check_dilation_invariance: mu must be positive");
  const int m = c.m(), l = c.l();

  const double rl = dilation_ratio(c, l);
  const double rm = dilation_ratio(c, m);
  const double qww_m = c.q_ww(m);
  const double lhs = double(m - l) * rl * rm;
  const double rhs = m * c.q_uu(m) / qww_m - (l == 0 ? 0.0 : l * c.q_uu(l) / c.q_ww(l));

  // ratios scale as 1/mu when the extremal is dilated; compare after the
  // exact homogeneity compensation
  double inv_dev = 0.0;
  for (int p : {l, m}) {
    const double direct = dilation_ratio(c, p);
    const double scaled = mu * dilation_ratio_scaled(c, p, mu);
    inv_dev = std::max(inv_dev,
                       std::abs(scaled - direct) / std::max(1.0, std::abs(direct)));
  }

  const double tol = effective_tol(tm, c.h(), c.residual(), lhs, rhs);
  InequalityReport rep = make_report("dilation", m, l, lhs, rhs, rhs - lhs, "rhs-lhs", tol,
                                     c.provenance());
  rep.pass = rep.pass && inv_dev <= kInvarianceTol;
  rep.inputs += ";mu=" + std::to_string(mu) + ";invariance_dev=" + std::to_string(inv_dev);
  return rep;
}

}  // namespace

InequalityReport check_poincare(const RadialFunction& u, const RadialExtremal& w,
                                const ToleranceModel& tm) {
  return poincare_core(RadialCtx{u, w}, tm);
}
InequalityReport check_poincare(const GridFunction2D& u, const GridExtremal& w,
                                const ToleranceModel& tm) {
  return poincare_core(GridCtx{u, w}, tm);
}

InequalityReport check_isoperimetric(const RadialFunction& u, const RadialExtremal& w,
                                     const ToleranceModel& tm) {
  return isoperimetric_core(RadialCtx{u, w}, tm);
}
InequalityReport check_isoperimetric(const GridFunction2D& u, const GridExtremal& w,
                                     const ToleranceModel& tm) {
  return isoperimetric_core(GridCtx{u, w}, tm);
}

InequalityReport check_composition(const RadialExtremal& w_ml, const RadialExtremal& w_mp,
                                   const RadialExtremal& w_pl, const ToleranceModel& tm) {
  require(w_ml.n == w_mp.n && w_ml.n == w_pl.n &&
              w_ml.w.radius() == w_mp.w.radius() && w_ml.w.radius() == w_pl.w.radius(),
          "check_composition: extremals live on different domains");
  const double im_ml = hessian_integral(w_ml.w, w_ml.n, w_ml.m);
  const double im_mp = hessian_integral(w_mp.w, w_mp.n, w_mp.m);
  const double il_pl = hessian_integral(w_pl.w, w_pl.n, w_pl.m);
  return composition_core(w_ml, w_mp, w_pl, im_ml, im_mp, il_pl, w_ml.w.spacing(), tm);
}
InequalityReport check_composition(const GridExtremal& w_ml, const GridExtremal& w_mp,
                                   const GridExtremal& w_pl, const ToleranceModel& tm) {
  require(w_ml.w.grid() == w_mp.w.grid() && w_ml.w.grid() == w_pl.w.grid(),
          "check_composition: extremals live on different domains");
  const double im_ml = hessian_integral(w_ml.w, w_ml.m);
  const double im_mp = hessian_integral(w_mp.w, w_mp.m);
  const double il_pl = hessian_integral(w_pl.w, w_pl.m);
  return composition_core(w_ml, w_mp, w_pl, im_ml, im_mp, il_pl, w_ml.w.grid().dr(), tm);
}

InequalityReport check_anpo(const RadialFunction& u, const RadialExtremal& w,
                            const ToleranceModel& tm) {
  return anpo_core(RadialCtx{u, w}, tm, "anpo");
}
InequalityReport check_anpo(const GridFunction2D& u, const GridExtremal& w,
                            const ToleranceModel& tm) {
  return anpo_core(GridCtx{u, w}, tm, "anpo");
}

InequalityReport check_zero_l(const RadialFunction& u, const RadialExtremal& w_m,
                              const ToleranceModel& tm) {
  return zero_l_core(RadialCtx{u, w_m}, tm);
}
InequalityReport check_zero_l(const GridFunction2D& u, const GridExtremal& w_m,
                              const ToleranceModel& tm) {
  return zero_l_core(GridCtx{u, w_m}, tm);
}

InequalityReport check_p2(const RadialFunction& u, const RadialExtremal& w,
                          const ToleranceModel& tm) {
  return p2_core(RadialCtx{u, w}, tm);
}
InequalityReport check_p2(const GridFunction2D& u, const GridExtremal& w,
                          const ToleranceModel& tm) {
  return p2_core(GridCtx{u, w}, tm);
}

InequalityReport check_dilation_invariance(const RadialFunction& u, const RadialExtremal& w,
                                           double mu, const ToleranceModel& tm) {
  return dilation_core(RadialCtx{u, w}, mu, tm);
}
InequalityReport check_dilation_invariance(const GridFunction2D& u, const GridExtremal& w,
                                           double mu, const ToleranceModel& tm) {
  return dilation_core(GridCtx{u, w}, mu, tm);
}

InequalityReport check_w2(const RadialExtremal& w_ml, const RadialExtremal& w_m0,
                          const ToleranceModel& tm) {
  require(w_ml.n == w_m0.n && w_ml.m == w_m0.m && w_m0.l == 0 &&
              w_ml.w.size() == w_m0.w.size() && w_ml.w.radius() == w_m0.w.radius(),
          "check_w2: expects w_{m,l} and w_{m,0} on the same domain");
  const int m = w_ml.m, l = w_ml.l, n = w_ml.n;
  const double res = std::max(w_ml.residual, w_m0.residual);
  const std::string prov = w_ml.provenance + "|" + w_m0.provenance;
  const double tol = tm(w_ml.w.spacing(), res);

  if (m == 1) {
    InequalityReport rep = make_report("w2", m, l, 0.0, 0.0, 0.0, "lhs-rhs", tol, prov);
    rep.inputs += ";vacuous (no orders p in 1..m-1)";
    return rep;
  }

  double min_tp = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= m - 1; ++p) {
    const RadialFunction tp = radial_m_hessian(w_ml.w, n, p);
    for (int i = 0; i < w_ml.w.size() - 1; ++i) min_tp = std::min(min_tp, tp[i]);
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < w_ml.w.size() - 1; ++i)
    min_gap = std::min(min_gap, w_m0.w[i] - w_ml.w[i]);

  InequalityReport rep = make_report("w2", m, l, min_tp, 1.0,
                                     std::min(min_tp - 1.0, min_gap), "lhs-rhs", tol, prov);
  rep.inputs += ";min(w_m0 - w_ml)=" + std::to_string(min_gap);
  return rep;
}

InequalityReport check_w2(const GridExtremal& w_ml, const GridExtremal& w_m0,
                          const ToleranceModel& tm) {
  require(w_ml.w.grid() == w_m0.w.grid() && w_ml.m == w_m0.m && w_m0.l == 0,
          "check_w2: expects w_{m,l} and w_{m,0} on the same domain");
  const int m = w_ml.m, l = w_ml.l;
  const double res = std::max(w_ml.residual, w_m0.residual);
  const std::string prov = w_ml.provenance + "|" + w_m0.provenance;
  const double tol = tm(w_ml.w.grid().dr(), res);

  if (m == 1) {
    InequalityReport rep = make_report("w2", m, l, 0.0, 0.0, 0.0, "lhs-rhs", tol, prov);
    rep.inputs += ";vacuous (no orders p in 1..m-1)";
    return rep;
  }

  const PolarGrid& g = w_ml.w.grid();
  double min_tp = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= m - 1; ++p) {
    const GridFunction2D tp = m_hessian_field(w_ml.w, p);
    min_tp = std::min(min_tp, tp.node(0));
    for (int i = 1; i < g.nr() - 1; ++i)
      for (int j = 0; j < g.ntheta(); ++j)
        min_tp = std::min(min_tp, tp.node(g.node_index(i, j)));
  }
  double min_gap = std::numeric_limits<double>::infinity();
  min_gap = std::min(min_gap, w_m0.w.node(0) - w_ml.w.node(0));
  for (int i = 1; i < g.nr() - 1; ++i)
    for (int j = 0; j < g.ntheta(); ++j) {
      const std::size_t k = g.node_index(i, j);
      min_gap = std::min(min_gap, w_m0.w.node(k) - w_ml.w.node(k));
    }

  InequalityReport rep = make_report("w2", m, l, min_tp, 1.0,
                                     std::min(min_tp - 1.0, min_gap), "lhs-rhs", tol, prov);
  rep.inputs += ";min(w_m0 - w_ml)=" + std::to_string(min_gap);
  return rep;
}

}  // namespace mhess
