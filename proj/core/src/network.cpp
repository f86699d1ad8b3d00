#include "tempsel/network.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "tempsel/rng.hpp"

namespace tempsel {

std::size_t NetworkSpec::param_count() const {
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < layer_widths.size(); ++l)
    count += static_cast<std::size_t>(layer_widths[l] + 1) * layer_widths[l + 1];
  return count;
}

std::vector<std::pair<std::size_t, std::size_t>> NetworkSpec::param_slices() const {
  std::vector<std::pair<std::size_t, std::size_t>> slices;
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < layer_widths.size(); ++l) {
    const std::size_t count =
        static_cast<std::size_t>(layer_widths[l] + 1) * layer_widths[l + 1];
    slices.emplace_back(offset, count);
    offset += count;
  }
  return slices;
}

void NetworkSpec::validate() const {
  if (layer_widths.size() < 3)
    throw std::invalid_argument("network: need input, >=1 hidden, output widths");
  for (int w : layer_widths)
    if (w < 1) throw std::invalid_argument("network: widths must be >= 1");
}

ParamVector init_params(const NetworkSpec& spec, std::uint64_t seed) {
  spec.validate();
  ParamVector theta(spec.param_count(), 0.0);
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < spec.layer_widths.size(); ++l) {
    const int fan_in = spec.layer_widths[l];
    const int fan_out = spec.layer_widths[l + 1];
    const double scale = std::sqrt(2.0 / fan_in);
    for (int i = 0; i < fan_in * fan_out; ++i) theta[offset + i] = scale * normal(rng);
    offset += static_cast<std::size_t>(fan_in + 1) * fan_out;  // biases stay 0
  }
  return theta;
}

namespace {

std::size_t total_act_size(const NetworkSpec& spec) {
  return std::accumulate(spec.layer_widths.begin(), spec.layer_widths.end(),
                         std::size_t{0});
}

// Runs the affine-ReLU composition, keeping every layer's activation in
// scratch.acts (input included). Returns the offset of the output activations.
std::size_t run_forward(const NetworkSpec& spec, std::span<const double> theta,
                        std::span<const double> x, MlpScratch& scratch) {
  scratch.acts.resize(total_act_size(spec));
  std::copy(x.begin(), x.end(), scratch.acts.begin());
  std::size_t in_off = 0, param_off = 0;
  for (std::size_t l = 0; l + 1 < spec.layer_widths.size(); ++l) {
    const int fan_in = spec.layer_widths[l];
    const int fan_out = spec.layer_widths[l + 1];
    const double* w = theta.data() + param_off;
    const double* b = w + static_cast<std::size_t>(fan_in) * fan_out;
    const double* in = scratch.acts.data() + in_off;
    double* out = scratch.acts.data() + in_off + fan_in;
    const bool hidden = (l + 2 < spec.layer_widths.size());
    for (int j = 0; j < fan_out; ++j) {
      const double* wj = w + static_cast<std::size_t>(j) * fan_in;
      double acc = b[j];
      for (int i = 0; i < fan_in; ++i) acc += wj[i] * in[i];
      out[j] = hidden && acc < 0.0 ? 0.0 : acc;
    }
    param_off += static_cast<std::size_t>(fan_in + 1) * fan_out;
    in_off += fan_in;
  }
  return in_off;
}

}  // namespace

void forward(const NetworkSpec& spec, std::span<const double> theta,
             std::span<const double> x, std::span<double> out, MlpScratch& scratch) {
  if (x.size() != static_cast<std::size_t>(spec.layer_widths.front()))
    throw std::invalid_argument("network forward: input dimension mismatch");
  if (theta.size() != spec.param_count())
    throw std::invalid_argument("network forward: parameter count mismatch");
  if (out.size() != static_cast<std::size_t>(spec.layer_widths.back()))
    throw std::invalid_argument("network forward: output dimension mismatch");
  const std::size_t out_off = run_forward(spec, theta, x, scratch);
  std::copy_n(scratch.acts.data() + out_off, out.size(), out.begin());
}

void vjp_accum(const NetworkSpec& spec, std::span<const double> theta,
               std::span<const double> x, std::span<const double> cotangent,
               std::span<double> grad, MlpScratch& scratch) {
  if (cotangent.size() != static_cast<std::size_t>(spec.layer_widths.back()))
    throw std::invalid_argument("network vjp: cotangent dimension mismatch");
  if (grad.size() != spec.param_count())
    throw std::invalid_argument("network vjp: gradient size mismatch");
  const std::size_t out_off = run_forward(spec, theta, x, scratch);

  scratch.deltas.assign(cotangent.begin(), cotangent.end());
  std::size_t in_off = out_off;
  std::size_t param_off = spec.param_count();
  for (std::size_t l = spec.layer_widths.size() - 1; l-- > 0;) {
    const int fan_in = spec.layer_widths[l];
    const int fan_out = spec.layer_widths[l + 1];
    in_off -= fan_in;
    param_off -= static_cast<std::size_t>(fan_in + 1) * fan_out;
    const double* w = theta.data() + param_off;
    const double* in = scratch.acts.data() + in_off;
    double* gw = grad.data() + param_off;
    double* gb = gw + static_cast<std::size_t>(fan_in) * fan_out;

    scratch.prev.assign(fan_in, 0.0);
    for (int j = 0; j < fan_out; ++j) {
      const double dj = scratch.deltas[j];
      const double* wj = w + static_cast<std::size_t>(j) * fan_in;
      double* gwj = gw + static_cast<std::size_t>(j) * fan_in;
      gb[j] += dj;
      for (int i = 0; i < fan_in; ++i) {
        gwj[i] += dj * in[i];
        scratch.prev[i] += dj * wj[i];
      }
    }
    if (l > 0) {
      // Gate through ReLU: active iff the stored activation is positive
      // (subgradient 0 at exactly 0).
      for (int i = 0; i < fan_in; ++i)
        if (in[i] <= 0.0) scratch.prev[i] = 0.0;
    }
    scratch.deltas = scratch.prev;
  }
}

std::vector<double> forward(const NetworkSpec& spec, std::span<const double> theta,
                            std::span<const double> x) {
  MlpScratch scratch;
  std::vector<double> out(spec.layer_widths.back());
  forward(spec, theta, x, out, scratch);
  return out;
}

ParamVector vjp(const NetworkSpec& spec, std::span<const double> theta,
                std::span<const double> x, std::span<const double> cotangent) {
  MlpScratch scratch;
  ParamVector grad(spec.param_count(), 0.0);
  vjp_accum(spec, theta, x, cotangent, grad, scratch);
  return grad;
}

}  // namespace tempsel
