#include "tempsel/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tempsel {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)
}

double InverseTemperature::beta() const { return std::exp(log_beta); }

void InverseTemperature::clamp() {
  log_beta = std::clamp(log_beta, kMinLogBeta, kMaxLogBeta);
}

bool InverseTemperature::at_clamp() const {
  return log_beta <= kMinLogBeta + 1e-9 || log_beta >= kMaxLogBeta - 1e-9;
}

InverseTemperature InverseTemperature::from_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("inverse temperature: beta must be positive and finite");
  return {std::log(beta)};
}

InverseTemperature InverseTemperature::from_log_beta(double log_beta) {
  if (!std::isfinite(log_beta))
    throw std::invalid_argument("inverse temperature: log beta must be finite");
  return {log_beta};
}

void GaussianHead::validate() const {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw std::invalid_argument("gaussian head: sigma2 must be positive and finite");
}

void SoftmaxHead::validate() const {
  if (num_classes < 2)
    throw std::invalid_argument("softmax head: need at least 2 classes");
}

int TemperedModel::num_classes() const {
  if (const auto* s = std::get_if<SoftmaxHead>(&head)) return s->num_classes;
  return -1;
}

void TemperedModel::validate() const {
  if (!features) throw std::invalid_argument("model: missing feature map");
  std::visit([](const auto& h) { h.validate(); }, head);
  const std::size_t want =
      is_classification() ? static_cast<std::size_t>(num_classes()) : 1u;
  if (features->output_dim() != want)
    throw std::invalid_argument("model: feature map output width does not match head");
}

double tempered_gaussian_logpdf(double y, double mu, const GaussianHead& head,
                                const InverseTemperature& beta) {
  if (!std::isfinite(y) || !std::isfinite(mu))
    throw std::invalid_argument("tempered_gaussian_logpdf: non-finite input");
  head.validate();
  const double b = beta.beta();
  const double r = y - mu;
  return 0.5 * beta.log_beta - 0.5 * (kLog2Pi + std::log(head.sigma2)) -
         b * r * r / (2.0 * head.sigma2);
}

void tempered_softmax(std::span<const double> logits, const InverseTemperature& beta,
                      std::span<double> probs) {
  if (logits.size() < 2) throw std::invalid_argument("tempered_softmax: need K >= 2");
  if (probs.size() != logits.size())
    throw std::invalid_argument("tempered_softmax: output size mismatch");
  const double b = beta.beta();
  double m = -std::numeric_limits<double>::infinity();
  for (double f : logits) {
    if (!std::isfinite(f)) throw std::invalid_argument("tempered_softmax: non-finite logit");
    m = std::max(m, b * f);
  }
  double z = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    probs[k] = std::exp(b * logits[k] - m);
    z += probs[k];
  }
  for (auto& p : probs) p /= z;
}

double tempered_softmax_logpdf(std::span<const double> logits, int label,
                               const InverseTemperature& beta) {
  if (label < 0 || static_cast<std::size_t>(label) >= logits.size())
    throw std::invalid_argument("tempered_softmax_logpdf: label out of range");
  const double b = beta.beta();
  double m = -std::numeric_limits<double>::infinity();
  for (double f : logits) m = std::max(m, b * f);
  double z = 0.0;
  for (double f : logits) z += std::exp(b * f - m);
  return b * logits[label] - m - std::log(z);
}

double base_logpdf(const TemperedModel& model, std::span<const double> output,
                   const LabeledDataset& data, std::size_t row) {
  static const InverseTemperature unit{0.0};
  return tempered_logpdf(model, output, data, row, unit);
}

double tempered_logpdf(const TemperedModel& model, std::span<const double> output,
                       const LabeledDataset& data, std::size_t row,
                       const InverseTemperature& beta) {
  if (const auto* g = std::get_if<GaussianHead>(&model.head))
    return tempered_gaussian_logpdf(data.targets[row], output[0], *g, beta);
  return tempered_softmax_logpdf(output, data.labels[row], beta);
}

namespace {

struct RowRange {
  std::span<const std::size_t> rows;
  std::size_t count;
  std::size_t operator[](std::size_t i) const { return rows.empty() ? i : rows[i]; }
};

RowRange resolve_rows(const LabeledDataset& data, std::span<const std::size_t> rows) {
  if (data.n == 0) throw std::invalid_argument("tempered loglik: empty dataset");
  RowRange r{rows, rows.empty() ? data.n : rows.size()};
  if (r.count == 0) throw std::invalid_argument("tempered loglik: empty batch");
  return r;
}

}  // namespace

LoglikGrad tempered_loglik_grad(const TemperedModel& model, std::span<const double> theta,
                                const InverseTemperature& beta, const LabeledDataset& data,
                                std::span<const std::size_t> rows) {
  model.validate();
  if (theta.size() != model.features->param_count())
    throw std::invalid_argument("tempered loglik: theta length mismatch");
  if (data.dim != model.features->input_dim())
    throw std::invalid_argument("tempered loglik: input dimension mismatch");
  const RowRange range = resolve_rows(data, rows);

  LoglikGrad out;
  out.grad_theta.assign(theta.size(), 0.0);
  const double b = beta.beta();
  const std::size_t width = model.features->output_dim();
  MlpScratch scratch;
  std::vector<double> output(width), cot(width), probs(width);

  const auto* gauss = std::get_if<GaussianHead>(&model.head);
  for (std::size_t i = 0; i < range.count; ++i) {
    const std::size_t row = range[i];
    const auto x = data.input(row);
    model.features->forward(theta, x, output, scratch);
    if (gauss) {
      const double r = data.targets[row] - output[0];
      out.value += tempered_gaussian_logpdf(data.targets[row], output[0], *gauss, beta);
      cot[0] = b * r / gauss->sigma2;
      // d/dlog(beta) of the per-example term: 1/2 - beta (y-mu)^2 / (2 sigma2)
      out.grad_log_beta += 0.5 - b * r * r / (2.0 * gauss->sigma2);
    } else {
      const int label = data.labels[row];
      out.value += tempered_softmax_logpdf(output, label, beta);
      tempered_softmax(output, beta, probs);
      double fbar = 0.0;
      for (std::size_t k = 0; k < width; ++k) fbar += probs[k] * output[k];
      for (std::size_t k = 0; k < width; ++k)
        cot[k] = b * ((static_cast<int>(k) == label ? 1.0 : 0.0) - probs[k]);
      // d/dlog(beta): beta (f_y - sum_k p_k f_k)
      out.grad_log_beta += b * (output[label] - fbar);
    }
    model.features->vjp_accum(theta, x, cot, out.grad_theta, scratch);
  }

  const double inv = 1.0 / static_cast<double>(range.count);
  out.value *= inv;
  out.grad_log_beta *= inv;
  for (auto& g : out.grad_theta) g *= inv;
  return out;
}

double tempered_loglik(const TemperedModel& model, std::span<const double> theta,
                       const InverseTemperature& beta, const LabeledDataset& data) {
  model.validate();
  const RowRange range = resolve_rows(data, {});
  const std::size_t width = model.features->output_dim();
  MlpScratch scratch;
  std::vector<double> output(width);
  double total = 0.0;
  for (std::size_t row = 0; row < range.count; ++row) {
    model.features->forward(theta, data.input(row), output, scratch);
    total += tempered_logpdf(model, output, data, row, beta);
  }
  return total / static_cast<double>(range.count);
}

// --- MlpMap -----------------------------------------------------------------

MlpMap::MlpMap(NetworkSpec spec) : spec_(std::move(spec)) { spec_.validate(); }
std::size_t MlpMap::param_count() const { return spec_.param_count(); }
std::size_t MlpMap::input_dim() const { return spec_.layer_widths.front(); }
std::size_t MlpMap::output_dim() const { return spec_.layer_widths.back(); }
ParamVector MlpMap::init_params(std::uint64_t seed) const {
  return tempsel::init_params(spec_, seed);
}
void MlpMap::forward(std::span<const double> theta, std::span<const double> x,
                     std::span<double> out, MlpScratch& scratch) const {
  tempsel::forward(spec_, theta, x, out, scratch);
}
void MlpMap::vjp_accum(std::span<const double> theta, std::span<const double> x,
                       std::span<const double> cot, std::span<double> grad,
                       MlpScratch& scratch) const {
  tempsel::vjp_accum(spec_, theta, x, cot, grad, scratch);
}
std::vector<std::pair<std::size_t, std::size_t>> MlpMap::param_slices() const {
  return spec_.param_slices();
}

// --- LinearMap ---------------------------------------------------------------

LinearMap::LinearMap(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("linear map: dim must be >= 1");
}
std::size_t LinearMap::param_count() const { return dim_; }
std::size_t LinearMap::input_dim() const { return dim_; }
std::size_t LinearMap::output_dim() const { return 1; }
ParamVector LinearMap::init_params(std::uint64_t) const {
  return ParamVector(dim_, 0.0);
}
void LinearMap::forward(std::span<const double> theta, std::span<const double> x,
                        std::span<double> out, MlpScratch&) const {
  if (x.size() != dim_ || theta.size() != dim_ || out.size() != 1)
    throw std::invalid_argument("linear map: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) acc += theta[i] * x[i];
  out[0] = acc;
}
void LinearMap::vjp_accum(std::span<const double>, std::span<const double> x,
                          std::span<const double> cot, std::span<double> grad,
                          MlpScratch&) const {
  if (cot.size() != 1 || grad.size() != dim_)
    throw std::invalid_argument("linear map: dimension mismatch");
  for (std::size_t i = 0; i < dim_; ++i) grad[i] += cot[0] * x[i];
}
std::vector<std::pair<std::size_t, std::size_t>> LinearMap::param_slices() const {
  return {{0, dim_}};
}

}  // namespace tempsel
