#pragma once

#include "histmatch/simbank.hpp"
#include "histmatch/types.hpp"

#include <vector>

namespace histmatch {

enum class RegressionMode { homoscedastic, heteroscedastic };

// Local two-step regression fit of one summary on lambda around a target:
// S_i = mu(lambda_i) + sigma(lambda_i) * eps_i, with mu linear and
// log sigma^2 linear, both fitted by Epanechnikov-weighted least squares
// over the k nearest bank rows.
struct RegressionFit {
  int summary = 0;
  RegressionMode mode = RegressionMode::heteroscedastic;
  Vec target;                // search coordinates
  std::vector<int> neighbors;
  Vec distances;             // scaled distances, ascending
  Vec mean_coef;             // intercept + d slopes
  Vec logvar_coef;           // intercept + d slopes (heteroscedastic mode)
  Vec fitted;                // mu-hat at the neighbors
  Vec residuals;             // S_i - mu-hat(lambda_i)
  bool rank_deficient = false;
  bool variance_floored = false;

  double mu_at(const Vec& lambda_search) const;
  double sigma_at(const Vec& lambda_search) const;  // 1.0 in homoscedastic mode
};

// Weighted local-linear fit of summary j at the target. Requires at least
// 2(d+2) usable neighbors. Weight zero falls on the k-th neighbor's distance.
RegressionFit fit_local(const SimulationBank& bank, const HyperPoint& target, int j,
                        int k, RegressionMode mode = RegressionMode::heteroscedastic);

// Regression-adjusted approximate draws from p(S^j | target):
//   S-hat_i = mu(target) + sigma(target)/sigma(lambda_i) * (S_i - mu(lambda_i)).
// Homoscedastic mode reduces to mu(target) + residual_i.
Vec adjusted_samples(const RegressionFit& fit, const SimulationBank& bank,
                     const HyperPoint& target);

}  // namespace histmatch
