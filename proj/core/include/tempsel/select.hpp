#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tempsel/dataset.hpp"
#include "tempsel/energy.hpp"
#include "tempsel/model.hpp"

namespace tempsel {

enum class LrSchedule {
  cosine,     // lr * (1 + cos(pi * epoch/total)) / 2, decays to 0
  piecewise,  // lr * multiplier of the latest (epoch, multiplier) entry reached
};

struct SelectConfig {
  double learning_rate = 1e-3;
  LrSchedule scheduler = LrSchedule::cosine;
  std::vector<std::pair<int, double>> piecewise;  // (epoch, multiplier), ascending
  double momentum = 0.9;         // in [0, 1)
  double weight_decay = 0.0;     // applied to theta only, never to log(beta)
  std::size_t batch_size = 0;    // 0 = full batch
  int total_epochs = 100;
  double grad_clip_norm = 1e6;   // joint (theta, log beta) gradient norm
  std::uint64_t seed = 0;

  void validate() const;
  double lr_at(int epoch) const;
  // Validation cadence: end of every floor(total/20)-th epoch, at least 1.
  int eval_interval() const;
};

struct TraceRow {
  int epoch;
  double train_loglik;
  double valid_loglik;
  double beta;
};

struct SelectionResult {
  ParamVector theta_star;
  InverseTemperature beta_star;
  std::vector<TraceRow> trace;
  double best_valid_loglik = 0.0;
  bool beta_clamped = false;  // best beta sits on the log-beta clamp
};

// Stage 1: joint momentum-SGD ascent of the mean tempered log-likelihood over
// (theta, log beta), beta initialized at 1, best-on-validation snapshot.
// Throws std::runtime_error with the step index on non-finite loss/gradient.
SelectionResult select_mle(const LabeledDataset& train, const LabeledDataset& valid,
                           const TemperedModel& model, const SelectConfig& config);

// MAP variant: objective adds (1/n) log p(theta). Rejects nonzero weight_decay.
SelectionResult select_map(const LabeledDataset& train, const LabeledDataset& valid,
                           const TemperedModel& model, const PriorSpec& prior,
                           const SelectConfig& config);

struct PosthocResult {
  InverseTemperature beta;
  bool flat = false;  // objective flat in beta; beta = 1 returned
};

// Post-hoc variant: theta fixed, 1-D golden-section maximization of the mean
// tempered log-likelihood on the validation split over log beta in [-10, 10],
// absolute tolerance 1e-6.
PosthocResult select_posthoc(const ParamVector& theta_fixed, const LabeledDataset& valid,
                             const TemperedModel& model);

}  // namespace tempsel
