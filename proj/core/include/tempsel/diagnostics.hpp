#pragma once

#include <vector>

#include "tempsel/sghmc.hpp"

namespace tempsel {

// Per-chain posterior-energy series at collected samples; C >= 2 chains of
// equal length S >= 4 (the last draw is dropped when S is odd).
struct ChainEnergySeries {
  std::vector<std::vector<double>> chains;
};

// Mean of the kinetic-temperature trace over the whole chain.
double kinetic_summary(const PosteriorSampleSet& sample_set);

// Rank-normalized split-Rhat on a scalar series: chains are split in half,
// all draws pooled and ranked (average ranks on ties), z = Phi^{-1}((r - 3/8)
// / (N + 1/4)), and Rhat = sqrt((((m-1)/m) W + B/m) / W) with m the sub-chain
// length, W the mean within-sub-chain variance and B = m * variance of the
// sub-chain means. Throws std::invalid_argument when all within-chain
// variance vanishes.
double split_rhat_rank_normalized(const ChainEnergySeries& series);

namespace detail {
// Inverse standard-normal CDF (Wichura's AS241, double precision).
double inverse_normal_cdf(double p);
}  // namespace detail

}  // namespace tempsel
