#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tempsel {

using ParamVector = std::vector<double>;

// Dense feedforward network: ReLU on hidden layers, identity on the output.
// Parameters are stored flat, layer-major, weights then bias per layer;
// weights for layer l are row-major [out][in].
struct NetworkSpec {
  std::vector<int> layer_widths;  // input, hidden..., output; needs >= 1 hidden

  std::size_t num_layers() const { return layer_widths.size() - 1; }
  std::size_t param_count() const;
  // (offset, count) of each layer's weight+bias block in the flat vector.
  std::vector<std::pair<std::size_t, std::size_t>> param_slices() const;
  void validate() const;
};

// Reusable buffers for forward/backward passes.
struct MlpScratch {
  std::vector<double> acts;    // activations of all layers, concatenated
  std::vector<double> deltas;  // backprop cotangents, one layer at a time
  std::vector<double> prev;
};

// He-style init: weights ~ N(0, 2/fan_in), biases 0. Deterministic in seed.
ParamVector init_params(const NetworkSpec& spec, std::uint64_t seed);

void forward(const NetworkSpec& spec, std::span<const double> theta,
             std::span<const double> x, std::span<double> out, MlpScratch& scratch);

// grad += d<cotangent, forward(theta, x)>/dtheta. ReLU subgradient at 0 is 0.
void vjp_accum(const NetworkSpec& spec, std::span<const double> theta,
               std::span<const double> x, std::span<const double> cotangent,
               std::span<double> grad, MlpScratch& scratch);

// Convenience wrappers that allocate their own scratch.
std::vector<double> forward(const NetworkSpec& spec, std::span<const double> theta,
                            std::span<const double> x);
ParamVector vjp(const NetworkSpec& spec, std::span<const double> theta,
                std::span<const double> x, std::span<const double> cotangent);

}  // namespace tempsel
