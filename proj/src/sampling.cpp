#include "mhess/sampling.hpp"

namespace mhess {

SymMatrix sample_gaussian_sym(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  return SymMatrix(a);
}

SymMatrix sample_cone_matrix(int n, int m, std::mt19937_64& rng, ConeSampleStats* stats) {
  std::uniform_real_distribution<double> shift(0.5, 2.5);
  for (;;) {
    if (stats) ++stats->attempts;
    SymMatrix g = sample_gaussian_sym(n, rng);
    const double c = shift(rng);
    Eigen::MatrixXd s = 0.6 * g.mat() + c * Eigen::MatrixXd::Identity(n, n);
    SymMatrix cand(s);
    if (cone_membership(cand, m).member) {
      if (stats) ++stats->accepted;
      return cand;
    }
  }
}

SymMatrix sample_psd_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    Eigen::MatrixXd s = a * a.transpose() / double(n);
    SymMatrix out(s);
    if (out.max_abs() > 1e-8) return out;
  }
}

}  // namespace mhess
