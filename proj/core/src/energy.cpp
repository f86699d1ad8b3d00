#include "tempsel/energy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tempsel {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
const InverseTemperature kUnitBeta{0.0};
}  // namespace

void PriorSpec::validate() const {
  if (!(variance > 0.0) || !std::isfinite(variance))
    throw std::invalid_argument("prior: variance must be positive and finite");
}

double PriorSpec::log_density(std::span<const double> theta) const {
  validate();
  double sq = 0.0;
  for (double t : theta) sq += t * t;
  const double d = static_cast<double>(theta.size());
  return -0.5 * d * (kLog2Pi + std::log(variance)) - sq / (2.0 * variance);
}

void PriorSpec::grad_log_density_accum(std::span<const double> theta,
                                       std::span<double> grad) const {
  for (std::size_t i = 0; i < theta.size(); ++i) grad[i] -= theta[i] / variance;
}

double posterior_energy(std::span<const double> theta, const PriorSpec& prior,
                        const TemperedModel& model, const LabeledDataset& data) {
  model.validate();
  double energy = -prior.log_density(theta);
  const std::size_t width = model.features->output_dim();
  MlpScratch scratch;
  std::vector<double> output(width);
  for (std::size_t row = 0; row < data.n; ++row) {
    model.features->forward(theta, data.input(row), output, scratch);
    energy -= tempered_logpdf(model, output, data, row, kUnitBeta);
  }
  return energy;
}

void minibatch_energy_grad(std::span<const double> theta, const PriorSpec& prior,
                           const TemperedModel& model, const LabeledDataset& data,
                           std::span<const std::size_t> rows, std::size_t n_total,
                           std::span<double> grad_out) {
  const std::size_t batch = rows.empty() ? data.n : rows.size();
  if (batch == 0) throw std::invalid_argument("minibatch_energy_grad: empty minibatch");
  if (n_total < batch)
    throw std::invalid_argument("minibatch_energy_grad: n_total < batch size");
  if (grad_out.size() != theta.size())
    throw std::invalid_argument("minibatch_energy_grad: gradient size mismatch");

  std::fill(grad_out.begin(), grad_out.end(), 0.0);
  // Accumulate sum of d log p(y|x,theta)/d theta over the minibatch.
  const std::size_t width = model.features->output_dim();
  MlpScratch scratch;
  std::vector<double> output(width), cot(width), probs(width);
  const auto* gauss = std::get_if<GaussianHead>(&model.head);
  for (std::size_t i = 0; i < batch; ++i) {
    const std::size_t row = rows.empty() ? i : rows[i];
    const auto x = data.input(row);
    model.features->forward(theta, x, output, scratch);
    if (gauss) {
      cot[0] = (data.targets[row] - output[0]) / gauss->sigma2;
    } else {
      tempered_softmax(output, kUnitBeta, probs);
      const int label = data.labels[row];
      for (std::size_t k = 0; k < width; ++k)
        cot[k] = (static_cast<int>(k) == label ? 1.0 : 0.0) - probs[k];
    }
    model.features->vjp_accum(theta, x, cot, grad_out, scratch);
  }
  const double scale = static_cast<double>(n_total) / static_cast<double>(batch);
  for (auto& g : grad_out) g *= -scale;
  // -grad log p(theta) = theta / variance
  for (std::size_t i = 0; i < theta.size(); ++i)
    grad_out[i] += theta[i] / prior.variance;
}

ParamVector minibatch_energy_grad(std::span<const double> theta, const PriorSpec& prior,
                                  const TemperedModel& model, const LabeledDataset& minibatch,
                                  std::size_t n_total) {
  ParamVector grad(theta.size(), 0.0);
  minibatch_energy_grad(theta, prior, model, minibatch, {}, n_total, grad);
  return grad;
}

}  // namespace tempsel
