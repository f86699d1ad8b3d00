#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "tempsel/dataset.hpp"
#include "tempsel/energy.hpp"
#include "tempsel/model.hpp"
#include "tempsel/rng.hpp"

namespace tempsel {

enum class Preconditioner { identity, layerwise };

struct SamplerConfig {
  double learning_rate = 1e-3;   // h0 = sqrt(learning_rate / n_train)
  double momentum_decay = 0.98;  // gamma = (1 - momentum_decay) / h0
  std::size_t batch_size = 0;    // 0 = full batch
  int cycle_length_epochs = 1;
  int ramp_start_epoch = 0;
  int ramp_end_epoch = 0;
  int burn_in_epochs = 0;
  int total_epochs = 1;
  double target_T = 1.0;
  Preconditioner preconditioner = Preconditioner::identity;
  double grad_clip_norm = 1e6;
  std::uint64_t seed = 0;

  void validate() const;  // ramp_start <= ramp_end <= burn_in <= total; cycle | (total - burn_in)
  double h0(std::size_t n_train) const;
  double gamma(std::size_t n_train) const;
};

struct ChainState {
  ParamVector theta;
  ParamVector momentum;
  ParamVector mass_diag;  // diagonal M, entries > 0
  std::uint64_t step_index = 0;
};

struct PosteriorSampleSet {
  std::vector<ParamVector> samples;   // one per completed cycle after burn-in
  std::vector<double> kinetic_trace;  // one per step, whole chain
  std::vector<double> energy_trace;   // U(theta) at each collected sample
  SamplerConfig config;
  std::uint64_t seed = 0;
  double beta = 1.0;  // 1 / target_T, echoed for downstream PPD construction
};

// One symplectic-Euler update:
//   m <- (1 - h*gamma) m - h grad_U + sqrt(2*gamma*h*T) M^{1/2} R,  R ~ N(0, I)
//   theta <- theta + h M^{-1} m
// The gradient is clipped to grad_clip_norm before use. Throws on non-finite state.
void sghmc_step(ChainState& state, std::span<const double> grad_u_tilde, double h,
                double temperature, double gamma, double grad_clip_norm, Rng& rng);

// T = 0 before ramp_start, linear up to target_T at ramp_end, constant after.
double temperature_schedule(int epoch, const SamplerConfig& config);

// Cosine cycle factor C in [0, 1]: 1 during burn-in, then (1 + cos(pi*frac))/2
// with frac the position inside the current cycle.
double step_size_factor(std::uint64_t step, std::uint64_t steps_per_epoch,
                        const SamplerConfig& config);

// m^T M^{-1} m / dim(m)
double kinetic_temperature(std::span<const double> momentum,
                           std::span<const double> mass_diag);

// Per-layer constant mass = max(RMS of gradient entries within the layer over
// all samples, 1e-8).
ParamVector layerwise_preconditioner_estimate(
    const std::vector<ParamVector>& grad_samples,
    std::span<const std::pair<std::size_t, std::size_t>> slices);
ParamVector layerwise_preconditioner_estimate(
    const std::vector<ParamVector>& grad_samples, const NetworkSpec& spec);

// Posterior energy target handed to the chain: full-data energy for traces and
// a minibatch gradient estimator over row indices of the training permutation.
struct EnergyTarget {
  std::size_t dim = 0;
  std::size_t n_train = 0;
  std::function<double(std::span<const double>)> energy;
  std::function<void(std::span<const double>, std::span<const std::size_t>,
                     std::span<double>)>
      minibatch_grad;
  std::vector<std::pair<std::size_t, std::size_t>> param_slices;  // layer bounds
};

EnergyTarget make_energy_target(const TemperedModel& model, const PriorSpec& prior,
                                const LabeledDataset& train);

// Stage 2: run the chain from theta0 through the temperature ramp, burn-in and
// cosine cycles, collecting one sample per cycle end. Throws std::runtime_error
// on divergence; the exception message carries the step index.
PosteriorSampleSet run_chain(const EnergyTarget& target, const ParamVector& theta0,
                             const SamplerConfig& config);

}  // namespace tempsel
