#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "tempsel/dataset.hpp"
#include "tempsel/network.hpp"

namespace tempsel {

// Inverse temperature beta = 1/T, stored and optimized as log(beta).
// The clamp bounds keep the joint MLE finite on zero-residual data; the
// paper's beta grid tops out at 1000 ~ e^6.9, well inside.
struct InverseTemperature {
  double log_beta = 0.0;

  static constexpr double kMinLogBeta = -10.0;
  static constexpr double kMaxLogBeta = 10.0;

  double beta() const;
  void clamp();
  bool at_clamp() const;
  static InverseTemperature from_beta(double beta);  // beta > 0 and finite
  static InverseTemperature from_log_beta(double log_beta);
};

struct GaussianHead {
  double sigma2 = 0.1;  // fixed observation variance
  void validate() const;
};

struct SoftmaxHead {
  int num_classes = 2;
  void validate() const;
};

using Head = std::variant<GaussianHead, SoftmaxHead>;

// Feature function x -> mu (regression, output_dim 1) or x -> logits
// (classification, output_dim K), differentiable in its flat parameters.
class FeatureMap {
 public:
  virtual ~FeatureMap() = default;
  virtual std::size_t param_count() const = 0;
  virtual std::size_t input_dim() const = 0;
  virtual std::size_t output_dim() const = 0;
  virtual ParamVector init_params(std::uint64_t seed) const = 0;
  virtual void forward(std::span<const double> theta, std::span<const double> x,
                       std::span<double> out, MlpScratch& scratch) const = 0;
  // grad += d<cot, forward(theta, x)>/dtheta
  virtual void vjp_accum(std::span<const double> theta, std::span<const double> x,
                         std::span<const double> cot, std::span<double> grad,
                         MlpScratch& scratch) const = 0;
  // Layer boundaries in the flat parameter vector (for layerwise mass).
  virtual std::vector<std::pair<std::size_t, std::size_t>> param_slices() const = 0;
};

class MlpMap final : public FeatureMap {
 public:
  explicit MlpMap(NetworkSpec spec);
  std::size_t param_count() const override;
  std::size_t input_dim() const override;
  std::size_t output_dim() const override;
  ParamVector init_params(std::uint64_t seed) const override;
  void forward(std::span<const double> theta, std::span<const double> x,
               std::span<double> out, MlpScratch& scratch) const override;
  void vjp_accum(std::span<const double> theta, std::span<const double> x,
                 std::span<const double> cot, std::span<double> grad,
                 MlpScratch& scratch) const override;
  std::vector<std::pair<std::size_t, std::size_t>> param_slices() const override;
  const NetworkSpec& spec() const { return spec_; }

 private:
  NetworkSpec spec_;
};

// mu(x; theta) = x . theta, no bias. Conjugate linear-regression feature map.
class LinearMap final : public FeatureMap {
 public:
  explicit LinearMap(std::size_t dim);
  std::size_t param_count() const override;
  std::size_t input_dim() const override;
  std::size_t output_dim() const override;
  ParamVector init_params(std::uint64_t seed) const override;
  void forward(std::span<const double> theta, std::span<const double> x,
               std::span<double> out, MlpScratch& scratch) const override;
  void vjp_accum(std::span<const double> theta, std::span<const double> x,
                 std::span<const double> cot, std::span<double> grad,
                 MlpScratch& scratch) const override;
  std::vector<std::pair<std::size_t, std::size_t>> param_slices() const override;

 private:
  std::size_t dim_;
};

// Likelihood head composed with a feature network; the tempered model is
// parameterized by (theta, beta).
struct TemperedModel {
  std::shared_ptr<const FeatureMap> features;
  Head head;

  bool is_classification() const { return std::holds_alternative<SoftmaxHead>(head); }
  int num_classes() const;
  void validate() const;
};

// log N(y | mu, sigma2/beta) = log(beta)/2 - log(2*pi*sigma2)/2 - beta*(y-mu)^2/(2*sigma2)
double tempered_gaussian_logpdf(double y, double mu, const GaussianHead& head,
                                const InverseTemperature& beta);

// probs_k = exp(beta*f_k - m) / sum_j exp(beta*f_j - m), m = max_j beta*f_j
void tempered_softmax(std::span<const double> logits, const InverseTemperature& beta,
                      std::span<double> probs);

// log of the k-th tempered softmax entry, computed in log space.
double tempered_softmax_logpdf(std::span<const double> logits, int label,
                               const InverseTemperature& beta);

// Base-model (beta = 1) per-example log density.
double base_logpdf(const TemperedModel& model, std::span<const double> output,
                   const LabeledDataset& data, std::size_t row);

// Tempered per-example log density at the model's head.
double tempered_logpdf(const TemperedModel& model, std::span<const double> output,
                       const LabeledDataset& data, std::size_t row,
                       const InverseTemperature& beta);

struct LoglikGrad {
  double value = 0.0;            // mean per-example tempered log-likelihood
  ParamVector grad_theta;        // gradient of the mean w.r.t. theta
  double grad_log_beta = 0.0;    // gradient of the mean w.r.t. log(beta)
};

// Joint value/gradient of the mean tempered log-likelihood over `rows` of
// `data` (all rows if `rows` is empty and data.n > 0).
LoglikGrad tempered_loglik_grad(const TemperedModel& model, std::span<const double> theta,
                                const InverseTemperature& beta, const LabeledDataset& data,
                                std::span<const std::size_t> rows = {});

// Mean tempered log-likelihood only (no gradients).
double tempered_loglik(const TemperedModel& model, std::span<const double> theta,
                       const InverseTemperature& beta, const LabeledDataset& data);

}  // namespace tempsel
