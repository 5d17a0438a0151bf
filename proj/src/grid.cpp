#include "mhess/grid.hpp"

#include <cmath>

namespace mhess {

namespace {

// Accumulates (node -> cxx, cxy, cyy) contributions while a stencil is built.
class HessianAccum {
 public:
  void add(std::size_t node, double cxx, double cxy, double cyy) {
    for (auto& t : terms_) {
      if (t.node == node) {
        t.cxx += cxx;
        t.cxy += cxy;
        t.cyy += cyy;
        return;
      }
    }
    terms_.push_back({node, cxx, cxy, cyy});
  }
  std::vector<HessianStencil::Term> take() { return std::move(terms_); }

 private:
  std::vector<HessianStencil::Term> terms_;
};

class GradientAccum {
 public:
  void add(std::size_t node, double cx, double cy) {
    for (auto& t : terms_) {
      if (t.node == node) {
        t.cx += cx;
        t.cy += cy;
        return;
      }
    }
    terms_.push_back({node, cx, cy});
  }
  std::vector<GradientStencil::Term> take() { return std::move(terms_); }

 private:
  std::vector<GradientStencil::Term> terms_;
};

}  // namespace

PolarGrid::PolarGrid(Domain domain, int nr, int ntheta)
    : domain_(std::move(domain)), nr_(nr), ntheta_(ntheta) {
  require(domain_.is_two_dimensional(), "PolarGrid: domain must be two-dimensional");
  require(nr_ >= kMinRadial, "PolarGrid: need at least 9 radial nodes");
  require(ntheta_ >= kMinAngular && ntheta_ % 2 == 0,
          "PolarGrid: need an even angular count >= 8");
}

std::array<double, 2> PolarGrid::xy(int i, int j) const {
  const auto s = domain_.scales();
  const double r = rho(i);
  const double t = theta(j);
  return {s[0] * r * std::cos(t), s[1] * r * std::sin(t)};
}

bool PolarGrid::operator==(const PolarGrid& o) const {
  return nr_ == o.nr_ && ntheta_ == o.ntheta_ &&
         domain_.kind() == o.domain_.kind() &&
         domain_.reference_radius() == o.domain_.reference_radius() &&
         domain_.scales() == o.domain_.scales();
}

GridFunction2D::GridFunction2D(Domain domain, int nr, int ntheta)
    : grid_(std::move(domain), nr, ntheta), values_(grid_.node_count(), 0.0) {}

GridFunction2D::GridFunction2D(PolarGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(values_.size() == grid_.node_count(), "GridFunction2D: value count mismatch");
}

GridFunction2D GridFunction2D::sample(const Domain& domain, int nr, int ntheta,
                                      const std::function<double(double, double)>& f) {
  GridFunction2D u(domain, nr, ntheta);
  const auto p0 = u.grid().xy(0, 0);
  u.at(0, 0) = f(p0[0], p0[1]);
  for (int i = 1; i < nr; ++i)
    for (int j = 0; j < ntheta; ++j) {
      const auto p = u.grid().xy(i, j);
      u.at(i, j) = f(p[0], p[1]);
    }
  return u;
}

double GridFunction2D::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction2D::boundary_max_abs() const {
  double m = 0.0;
  for (int j = 0; j < ntheta(); ++j) m = std::max(m, std::abs(at(nr() - 1, j)));
  return m;
}

GridFunction2D& GridFunction2D::operator+=(const GridFunction2D& o) {
  require(grid_ == o.grid_, "GridFunction2D: grid mismatch");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

GridFunction2D& GridFunction2D::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

HessianStencil hessian_stencil(const PolarGrid& g, int i, int j) {
  const double h = g.dr();
  const double ht = g.dtheta();
  const auto sc = g.domain().scales();
  const double isx = 1.0 / sc[0], isy = 1.0 / sc[1];
  const int nt = g.ntheta();
  HessianAccum acc;
  HessianStencil out;

  if (i == 0) {
    // Diametral second differences resolved into the quadratic harmonics.
    out.kind = StencilKind::Pole;
    for (int k = 0; k < nt; ++k) {
      const double t = g.theta(k);
      const double fxx = (1.0 + 2.0 * std::cos(2.0 * t)) / nt;
      const double fyy = (1.0 - 2.0 * std::cos(2.0 * t)) / nt;
      const double fxy = 2.0 * std::sin(2.0 * t) / nt;
      const double c = 1.0 / (h * h);
      acc.add(g.node_index(1, k), c * fxx, c * fxy, c * fyy);
      acc.add(g.node_index(1, k + nt / 2), c * fxx, c * fxy, c * fyy);
      acc.add(g.node_index(0, 0), -2.0 * c * fxx, -2.0 * c * fxy, -2.0 * c * fyy);
    }
  } else {
    const double rho = g.rho(i);
    const double c = std::cos(g.theta(j));
    const double s = std::sin(g.theta(j));
    const double cc = c * c, ss = s * s, cs = c * s;

    // factors multiplying each polar partial in (u_xx, u_xy, u_yy)
    const double f_rr[3] = {cc, cs, ss};
    const double f_r[3] = {ss / rho, -cs / rho, cc / rho};
    const double f_tt[3] = {ss / (rho * rho), -cs / (rho * rho), cc / (rho * rho)};
    const double f_rt[3] = {-2.0 * cs / rho, (cc - ss) / rho, 2.0 * cs / rho};
    const double f_t[3] = {2.0 * cs / (rho * rho), -(cc - ss) / (rho * rho),
                           -2.0 * cs / (rho * rho)};

    auto add = [&](int ii, int jj, double w, const double f[3]) {
      acc.add(g.node_index(ii, jj), w * f[0], w * f[1], w * f[2]);
    };

    if (i < g.nr() - 1) {
      out.kind = StencilKind::Central;
      // u_rr, u_r
      add(i - 1, j, 1.0 / (h * h), f_rr);
      add(i, j, -2.0 / (h * h), f_rr);
      add(i + 1, j, 1.0 / (h * h), f_rr);
      add(i + 1, j, 0.5 / h, f_r);
      add(i - 1, j, -0.5 / h, f_r);
      // u_tt, u_t
      add(i, j - 1, 1.0 / (ht * ht), f_tt);
      add(i, j, -2.0 / (ht * ht), f_tt);
      add(i, j + 1, 1.0 / (ht * ht), f_tt);
      add(i, j + 1, 0.5 / ht, f_t);
      add(i, j - 1, -0.5 / ht, f_t);
      // u_rt (central in both; at i = 1 the pole terms cancel)
      const double w4 = 1.0 / (4.0 * h * ht);
      add(i + 1, j + 1, w4, f_rt);
      add(i + 1, j - 1, -w4, f_rt);
      add(i - 1, j + 1, -w4, f_rt);
      add(i - 1, j - 1, w4, f_rt);
    } else {
      out.kind = StencilKind::OneSided;
      // backward in rho at third order (differencing across the boundary
      // ring then stays second order), central in theta
      const double b2[5] = {35.0 / 12.0, -104.0 / 12.0, 114.0 / 12.0, -56.0 / 12.0,
                            11.0 / 12.0};
      for (int k = 0; k < 5; ++k) add(i - k, j, b2[k] / (h * h), f_rr);
      const double b1[4] = {11.0 / 6.0, -3.0, 1.5, -1.0 / 3.0};
      for (int k = 0; k < 4; ++k) add(i - k, j, b1[k] / h, f_r);
      add(i, j - 1, 1.0 / (ht * ht), f_tt);
      add(i, j, -2.0 / (ht * ht), f_tt);
      add(i, j + 1, 1.0 / (ht * ht), f_tt);
      add(i, j + 1, 0.5 / ht, f_t);
      add(i, j - 1, -0.5 / ht, f_t);
      // u_rt: backward-in-rho applied to the central theta derivative
      const double wt = 0.5 / ht;
      for (int k = 0; k < 4; ++k) {
        add(i - k, j + 1, b1[k] / h * wt, f_rt);
        add(i - k, j - 1, -b1[k] / h * wt, f_rt);
      }
    }
  }

  out.terms = acc.take();
  // map reference second derivatives onto the physical ones
  for (auto& t : out.terms) {
    t.cxx *= isx * isx;
    t.cxy *= isx * isy;
    t.cyy *= isy * isy;
  }
  return out;
}

GradientStencil gradient_stencil(const PolarGrid& g, int i, int j) {
  const double h = g.dr();
  const double ht = g.dtheta();
  const auto sc = g.domain().scales();
  const double isx = 1.0 / sc[0], isy = 1.0 / sc[1];
  const int nt = g.ntheta();
  GradientAccum acc;
  GradientStencil out;

  if (i == 0) {
    out.kind = StencilKind::Pole;
    for (int k = 0; k < nt; ++k) {
      const double t = g.theta(k);
      const double fx = 2.0 * std::cos(t) / nt;
      const double fy = 2.0 * std::sin(t) / nt;
      const double c = 0.5 / h;
      acc.add(g.node_index(1, k), c * fx, c * fy);
      acc.add(g.node_index(1, k + nt / 2), -c * fx, -c * fy);
    }
  } else {
    const double rho = g.rho(i);
    const double c = std::cos(g.theta(j));
    const double s = std::sin(g.theta(j));
    auto add = [&](int ii, int jj, double w_r, double w_t) {
      // u_x = c u_r - s u_t / rho ; u_y = s u_r + c u_t / rho
      acc.add(g.node_index(ii, jj), c * w_r - s * w_t / rho, s * w_r + c * w_t / rho);
    };
    if (i < g.nr() - 1) {
      out.kind = StencilKind::Central;
      add(i + 1, j, 0.5 / h, 0.0);
      add(i - 1, j, -0.5 / h, 0.0);
    } else {
      out.kind = StencilKind::OneSided;
      const double b1[4] = {11.0 / 6.0, -3.0, 1.5, -1.0 / 3.0};
      for (int k = 0; k < 4; ++k) add(i - k, j, b1[k] / h, 0.0);
    }
    add(i, j + 1, 0.0, 0.5 / ht);
    add(i, j - 1, 0.0, -0.5 / ht);
  }

  out.terms = acc.take();
  for (auto& t : out.terms) {
    t.cx *= isx;
    t.cy *= isy;
  }
  return out;
}

SymMatrix HessianField2D::matrix(std::size_t node) const {
  Eigen::MatrixXd m(2, 2);
  m << xx[node], xy[node], xy[node], yy[node];
  return SymMatrix(m);
}

HessianField2D grid_hessian(const GridFunction2D& u) {
  const PolarGrid& g = u.grid();
  const std::size_t n = g.node_count();
  HessianField2D f;
  f.xx.assign(n, 0.0);
  f.xy.assign(n, 0.0);
  f.yy.assign(n, 0.0);
  f.kind.assign(n, StencilKind::None);
  auto eval = [&](int i, int j) {
    const HessianStencil st = hessian_stencil(g, i, j);
    double xx = 0.0, xy = 0.0, yy = 0.0;
    for (const auto& t : st.terms) {
      const double v = u.node(t.node);
      xx += t.cxx * v;
      xy += t.cxy * v;
      yy += t.cyy * v;
    }
    const std::size_t k = g.node_index(i, j);
    f.xx[k] = xx;
    f.xy[k] = xy;
    f.yy[k] = yy;
    f.kind[k] = st.kind;
  };
  eval(0, 0);
  for (int i = 1; i < g.nr(); ++i)
    for (int j = 0; j < g.ntheta(); ++j) eval(i, j);
  return f;
}

GradientField2D grid_gradient(const GridFunction2D& u) {
  const PolarGrid& g = u.grid();
  const std::size_t n = g.node_count();
  GradientField2D f;
  f.x.assign(n, 0.0);
  f.y.assign(n, 0.0);
  f.kind.assign(n, StencilKind::None);
  auto eval = [&](int i, int j) {
    const GradientStencil st = gradient_stencil(g, i, j);
    double gx = 0.0, gy = 0.0;
    for (const auto& t : st.terms) {
      const double v = u.node(t.node);
      gx += t.cx * v;
      gy += t.cy * v;
    }
    const std::size_t k = g.node_index(i, j);
    f.x[k] = gx;
    f.y[k] = gy;
    f.kind[k] = st.kind;
  };
  eval(0, 0);
  for (int i = 1; i < g.nr(); ++i)
    for (int j = 0; j < g.ntheta(); ++j) eval(i, j);
  return f;
}

GridFunction2D m_hessian_field(const GridFunction2D& u, int m) {
  require(m == 1 || m == 2, "m_hessian_field: order must be 1 or 2");
  const HessianField2D h = grid_hessian(u);
  GridFunction2D out(u.grid(), std::vector<double>(u.grid().node_count(), 0.0));
  for (std::size_t k = 0; k < u.grid().node_count(); ++k) {
    out.node(k) = (m == 1) ? h.xx[k] + h.yy[k] : h.xx[k] * h.yy[k] - h.xy[k] * h.xy[k];
  }
  return out;
}

namespace {

// T_m^{ij} per node for m in {1, 2}: identity or the cofactor matrix.
struct MinorGradientField {
  std::vector<double> a11, a12, a22;
};

MinorGradientField minor_gradient_field(const HessianField2D& h, int m) {
  const std::size_t n = h.xx.size();
  MinorGradientField f;
  f.a11.assign(n, 0.0);
  f.a12.assign(n, 0.0);
  f.a22.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (m == 1) {
      f.a11[k] = 1.0;
      f.a22[k] = 1.0;
    } else {
      f.a11[k] = h.yy[k];
      f.a12[k] = -h.xy[k];
      f.a22[k] = h.xx[k];
    }
  }
  return f;
}

// Divergence of a Cartesian vector field sampled on the grid. The max norm
// runs over interior rings with rho >= R/8: the 1/rho factors in the polar
// second-derivative stencils cost an order of accuracy on the innermost
// rings, so the pole neighborhood is excluded from the reported residual.
double max_divergence_deficit(const GridFunction2D& shape,
                              const std::vector<double>& f1,
                              const std::vector<double>& f2,
                              const std::vector<double>& target) {
  const PolarGrid& g = shape.grid();
  const double rho_cut = g.domain().reference_radius() / 8.0;
  double worst = 0.0;
  // rings touching the one-sided boundary values are excluded as well
  for (int i = 1; i < g.nr() - 2; ++i) {
    if (g.rho(i) < rho_cut) continue;
    for (int j = 0; j < g.ntheta(); ++j) {
      const GradientStencil st = gradient_stencil(g, i, j);
      double div = 0.0;
      for (const auto& t : st.terms) div += t.cx * f1[t.node] + t.cy * f2[t.node];
      const std::size_t k = g.node_index(i, j);
      worst = std::max(worst, std::abs(target[k] - div));
    }
  }
  return worst;
}

}  // namespace

double divergence_identity_residual(const GridFunction2D& u, int m) {
  require(m == 1 || m == 2, "divergence_identity_residual: order must be 1 or 2");
  const HessianField2D h = grid_hessian(u);
  const GradientField2D grad = grid_gradient(u);
  const MinorGradientField mg = minor_gradient_field(h, m);
  const std::size_t n = u.grid().node_count();

  std::vector<double> f1(n), f2(n), target(n);
  for (std::size_t k = 0; k < n; ++k) {
    f1[k] = (mg.a11[k] * grad.x[k] + mg.a12[k] * grad.y[k]) / m;
    f2[k] = (mg.a12[k] * grad.x[k] + mg.a22[k] * grad.y[k]) / m;
    target[k] = (m == 1) ? h.xx[k] + h.yy[k] : h.xx[k] * h.yy[k] - h.xy[k] * h.xy[k];
  }
  return max_divergence_deficit(u, f1, f2, target);
}

double cofactor_divergence_residual(const GridFunction2D& u, int m) {
  require(m == 1 || m == 2, "cofactor_divergence_residual: order must be 1 or 2");
  const HessianField2D h = grid_hessian(u);
  const MinorGradientField mg = minor_gradient_field(h, m);
  const std::size_t n = u.grid().node_count();
  const std::vector<double> zero(n, 0.0);

  // row 1: (a11, a12), row 2: (a12, a22)
  const double r1 = max_divergence_deficit(u, mg.a11, mg.a12, zero);
  const double r2 = max_divergence_deficit(u, mg.a12, mg.a22, zero);
  return std::max(r1, r2);
}

GridFunction2D graph_curvature(const GridFunction2D& u, int m) {
  require(m == 1 || m == 2, "graph_curvature: order must be 1 or 2");
  const PolarGrid& g = u.grid();
  const GradientField2D grad = grid_gradient(u);
  const std::size_t n = g.node_count();

  std::vector<double> v1(n), v2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(1.0 + grad.x[k] * grad.x[k] + grad.y[k] * grad.y[k]);
    v1[k] = grad.x[k] / s;
    v2[k] = grad.y[k] / s;
  }

  GridFunction2D out(g, std::vector<double>(n, 0.0));
  auto eval = [&](int i, int j) {
    const GradientStencil st = gradient_stencil(g, i, j);
    double j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0;
    for (const auto& t : st.terms) {
      j11 += t.cx * v1[t.node];
      j12 += t.cy * v1[t.node];
      j21 += t.cx * v2[t.node];
      j22 += t.cy * v2[t.node];
    }
    out.node(g.node_index(i, j)) = (m == 1) ? j11 + j22 : j11 * j22 - j12 * j21;
  };
  eval(0, 0);
  for (int i = 1; i < g.nr() - 1; ++i)
    for (int j = 0; j < g.ntheta(); ++j) eval(i, j);
  return out;
}

}  // namespace mhess
