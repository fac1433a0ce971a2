#pragma once

#include "histmatch/types.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace histmatch {

// A generative Bayesian model exposing its prior predictive summaries:
// simulate_summaries draws theta ~ p(theta|lambda), y ~ p(y|theta) and
// reduces y to J univariate summaries. Pure function of (lambda, seed);
// safe to call concurrently.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual int dim() const = 0;          // hyperparameter dimension d
  virtual int n_summaries() const = 0;  // J
  virtual std::vector<std::string> summary_labels() const = 0;

  // lambda is in natural scale.
  virtual SummaryVector simulate_summaries(const HyperPoint& lambda,
                                           std::uint64_t seed) const = 0;
};

using ModelPtr = std::shared_ptr<const Model>;

}  // namespace histmatch
