#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tempsel/dataset.hpp"
#include "tempsel/network.hpp"
#include "tempsel/rng.hpp"

namespace tempsel {

// ---------------------------------------------------------------------------
// Toy univariate Gaussian: truth N(0, tau2), model N(mu, sigma2), prior
// N(0, sigma2_p) on mu, observed sample mean xbar over n points.
// ---------------------------------------------------------------------------

struct ToyGaussianSetup {
  int n = 1;
  double xbar = 0.0;
  double sigma2 = 1.0;    // model variance
  double tau2 = 1.0;      // truth variance
  double sigma2_p = 1.0;  // prior variance

  void validate() const;
};

struct GaussianMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Tempered posterior over mu at temperature T: mean xbar/(sigma2/(n sigma2_p) + 1),
// variance T / (1/sigma2_p + n/sigma2). The mean is independent of T.
GaussianMoments toy_posterior(const ToyGaussianSetup& setup, double T);

// Posterior predictive: same mean, variance = posterior variance + sigma2.
GaussianMoments toy_ppd(const ToyGaussianSetup& setup, double T);

// Closed-form minimizers. Nonpositive stationary points are reported as
// boundary solutions (value 0, boundary flag) since T ranges over (0, inf).
struct TStar {
  double value = 0.0;
  bool boundary = false;
};

// Squared 2-Wasserstein distance between truth and PPD.
double toy_w2(const ToyGaussianSetup& setup, double T);
TStar toy_tstar_w2(const ToyGaussianSetup& setup);

// KL(truth || PPD).
double toy_kl(const ToyGaussianSetup& setup, double T);
TStar toy_tstar_kl(const ToyGaussianSetup& setup);

// ---------------------------------------------------------------------------
// Conjugate Bayesian linear regression: model N(y | x.theta, sigma2), prior
// N(0, sigma2_p I). Sigma = (X^T X + (sigma2/sigma2_p) I)^{-1}.
// ---------------------------------------------------------------------------

struct ConjugateLinRegSetup {
  std::size_t n = 0, d = 0;
  std::vector<double> X;  // n x d, row-major
  std::vector<double> y;  // length n

  double sigma2 = 0.1;
  double sigma2_p = 1.0;

  void validate() const;
};

struct LinregPosterior {
  std::size_t d = 0;
  std::vector<double> mean;        // theta_hat = Sigma X^T y
  std::vector<double> covariance;  // (sigma2/beta) * Sigma, row-major d x d
};

LinregPosterior linreg_tempered_posterior(const ConjugateLinRegSetup& setup, double beta);

// log N(y | x.theta_hat, (sigma2/beta)(1 + x^T Sigma x))
double linreg_tmpd_logdensity(const ConjugateLinRegSetup& setup, double beta,
                              std::span<const double> x, double y);

// Exact draws from the tempered posterior N(theta_hat, (sigma2/beta) Sigma).
std::vector<ParamVector> linreg_exact_samples(const ConjugateLinRegSetup& setup,
                                              double beta, std::size_t count, Rng& rng);

struct Lemma1Gap {
  double lhs = 0.0;  // empirical TM-PD LPD over the test points
  double rhs = 0.0;  // mean log tempered model at theta_hat - mean log(1+x^T Sigma x)/2
  double gap = 0.0;  // lhs - rhs, strictly positive for x != 0
};

Lemma1Gap lemma1_bound_gap(const ConjugateLinRegSetup& setup, double beta,
                           const LabeledDataset& test_points);

// ---------------------------------------------------------------------------
// Discrete enumerable model: finite theta grid with prior masses, finite
// (x, y) alphabet with per-theta conditional densities, truth q over the
// alphabet, and an observed dataset of alphabet indices.
// ---------------------------------------------------------------------------

struct DiscreteModel {
  std::vector<double> log_prior;                // size G, normalized masses
  std::vector<std::vector<double>> cond_logp;   // [G][A]: log p(y_a | x_a, theta_g)
  std::vector<double> truth_q;                  // size A, sums to 1
  std::vector<std::size_t> data;                // observed alphabet indices

  void validate() const;
};

// Exactly enumerated LPD(beta) of the PPD (standard-model average under the
// tempered posterior).
double discrete_lpd(const DiscreteModel& model, double beta);

// d LPD / d beta via the posterior-update identity:
//   E_q [ E_{p_beta(theta | D u (x,y))} log p(D, theta) ]
//   - E_{p_beta(theta | D)} log p(D, theta),
// with the updated posterior formed by one untempered likelihood factor.
double discrete_grad_lpd(const DiscreteModel& model, double beta);

}  // namespace tempsel
