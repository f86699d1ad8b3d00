#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempsel/dataset.hpp"
#include "tempsel/model.hpp"
#include "tempsel/sghmc.hpp"

namespace tempsel {

enum class PpdKind { sm, tm };

// Equal-weight mixture over posterior samples. SM averages the base model
// p(y|x,theta_s); TM averages the tempered model p(y|x,theta_s,beta).
struct PredictiveDensity {
  PpdKind kind = PpdKind::sm;
  std::shared_ptr<const PosteriorSampleSet> samples;
  TemperedModel model;
  InverseTemperature beta;  // used only when kind == tm

  void validate() const;
};

// Pointwise log predictive density; y is the regression target or, for
// classification, the class label cast to double (validated integral).
double ppd_logdensity(const PredictiveDensity& pd, std::span<const double> x, double y);

// Regression: mean over samples of mu(x;theta_s), identical across kinds.
double point_predict_regression(const PredictiveDensity& pd, std::span<const double> x);
// Classification: argmax of the sample-averaged probability vector (base
// probabilities for SM, tempered for TM).
int point_predict_class(const PredictiveDensity& pd, std::span<const double> x);

// Mean pointwise log predictive density over the test split.
double lpd(const PredictiveDensity& pd, const LabeledDataset& test);

double mse(const PredictiveDensity& pd, const LabeledDataset& test);
double accuracy(const PredictiveDensity& pd, const LabeledDataset& test);

// Single-pass evaluation of everything the harness reports for one dataset.
struct PpdMetrics {
  double lpd_sm = 0.0;
  double lpd_tm = 0.0;
  double point_metric_sm = 0.0;  // mse (regression) or accuracy (classification)
  double point_metric_tm = 0.0;  // equal to _sm for regression
};
PpdMetrics evaluate_ppd(const TemperedModel& model,
                        std::shared_ptr<const PosteriorSampleSet> samples,
                        const InverseTemperature& beta, const LabeledDataset& data);

inline constexpr std::array<double, 9> kPaperBetaGrid{0.1, 0.3, 1.0,  3.0,  10.0,
                                                      30.0, 100.0, 300.0, 1000.0};

struct GridRow {
  double beta = 0.0;
  bool failed = false;
  std::string error;
  PpdMetrics valid;
  PpdMetrics test;
};

struct GridResult {
  std::vector<GridRow> rows;
  // Validation-selected beta per metric; ties break toward smaller beta.
  double selected_beta_lpd_sm = 0.0;
  double selected_beta_lpd_tm = 0.0;
  double selected_beta_point_sm = 0.0;
  double selected_beta_point_tm = 0.0;
};

// One full sampler run per grid beta via `sample_at`; per-beta failures are
// recorded on the row and the search continues.
using SampleAtBeta = std::function<std::shared_ptr<const PosteriorSampleSet>(double beta)>;
GridResult grid_search(std::span<const double> beta_grid, const SampleAtBeta& sample_at,
                       const TemperedModel& model, const LabeledDataset& valid,
                       const LabeledDataset& test);

}  // namespace tempsel
