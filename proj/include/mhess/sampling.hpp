#pragma once

#include <random>

#include "mhess/symfunc.hpp"

namespace mhess {

struct ConeSampleStats {
  long attempts = 0;
  long accepted = 0;
  double acceptance_rate() const {
    return attempts > 0 ? double(accepted) / double(attempts) : 0.0;
  }
};

// Symmetrized Gaussian matrix, entries N(0,1) before symmetrization.
SymMatrix sample_gaussian_sym(int n, std::mt19937_64& rng);

// Rejection sampler for K_m: Gaussian symmetric matrices shifted toward the
// identity, resampled until membership holds. Stats accumulate across calls.
SymMatrix sample_cone_matrix(int n, int m, std::mt19937_64& rng,
                             ConeSampleStats* stats = nullptr);

// Random nonzero positive semidefinite matrix (Gram matrix of a Gaussian).
SymMatrix sample_psd_matrix(int n, std::mt19937_64& rng);

}  // namespace mhess
