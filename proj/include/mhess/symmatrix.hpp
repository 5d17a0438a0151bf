#pragma once

#include <Eigen/Dense>
#include <span>

#include "mhess/common.hpp"

namespace mhess {

// Dense symmetric n x n matrix, 2 <= n <= 8. Construction symmetrizes,
// so entries(i,j) == entries(j,i) holds exactly afterwards.
class SymMatrix {
 public:
  static constexpr int kMinDim = 2;
  static constexpr int kMaxDim = 8;

  explicit SymMatrix(int n) : m_(check_dim(n), n) { m_.setZero(); }

  explicit SymMatrix(const Eigen::MatrixXd& a) {
    require(a.rows() == a.cols(), "SymMatrix: matrix must be square");
    check_dim(static_cast<int>(a.rows()));
    m_ = 0.5 * (a + a.transpose());
  }

  static SymMatrix identity(int n) {
    SymMatrix s(n);
    s.m_.setIdentity();
    return s;
  }

  static SymMatrix diagonal(std::span<const double> d) {
    SymMatrix s(static_cast<int>(d.size()));
    for (int i = 0; i < s.dim(); ++i) s.m_(i, i) = d[i];
    return s;
  }

  int dim() const { return static_cast<int>(m_.rows()); }

  double operator()(int i, int j) const { return m_(i, j); }

  // Sets (i,j) and (j,i) together.
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  const Eigen::MatrixXd& mat() const { return m_; }

  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  // Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m_, Eigen::EigenvaluesOnly)
        .eigenvalues();
  }

  SymMatrix& operator+=(const SymMatrix& o) {
    require(o.dim() == dim(), "SymMatrix: dimension mismatch");
    m_ += o.m_;
    return *this;
  }

  SymMatrix& operator*=(double c) {
    m_ *= c;
    return *this;
  }

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator*(double c, SymMatrix a) { return a *= c; }

 private:
  static int check_dim(int n) {
    require(n >= kMinDim && n <= kMaxDim, "SymMatrix: dimension must be in [2, 8]");
    return n;
  }

  Eigen::MatrixXd m_;
};

}  // namespace mhess
