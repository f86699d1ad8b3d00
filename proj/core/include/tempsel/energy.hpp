#pragma once

#include <span>

#include "tempsel/dataset.hpp"
#include "tempsel/model.hpp"

namespace tempsel {

// Zero-mean isotropic Gaussian prior over all weights.
struct PriorSpec {
  double variance = 1.0;  // sigma_p^2

  void validate() const;
  double log_density(std::span<const double> theta) const;
  // grad += d log p(theta) / d theta = -theta / variance
  void grad_log_density_accum(std::span<const double> theta, std::span<double> grad) const;
};

// U(theta) = -log p(theta) - sum_{(x,y) in data} log p(y|x,theta).
// The tempered posterior is proportional to exp(-U(theta)/T).
double posterior_energy(std::span<const double> theta, const PriorSpec& prior,
                        const TemperedModel& model, const LabeledDataset& data);

// grad of the minibatch estimator of U:
//   -grad log p(theta) - (n_total/|rows|) * sum_{rows} grad log p(y|x,theta).
// Equals the exact gradient when rows cover the full set.
void minibatch_energy_grad(std::span<const double> theta, const PriorSpec& prior,
                           const TemperedModel& model, const LabeledDataset& data,
                           std::span<const std::size_t> rows, std::size_t n_total,
                           std::span<double> grad_out);

// Spec-shaped overload: the minibatch is a dataset of its own.
ParamVector minibatch_energy_grad(std::span<const double> theta, const PriorSpec& prior,
                                  const TemperedModel& model, const LabeledDataset& minibatch,
                                  std::size_t n_total);

}  // namespace tempsel
