#pragma once

#include "histmatch/model.hpp"
#include "histmatch/types.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace histmatch {

// Bank of (lambda_i, S_i) pairs drawn from pseudo-prior x prior x data model;
// the emulator's training set. Immutable after construction: augmentation
// returns a new value. lambdas are stored in search coordinates.
struct SimulationBank {
  Mat lambdas;                  // N x d
  Mat summaries;                // N x J, NaN entries mark degenerate summaries
  std::vector<int> wave;        // provenance per row; 0 = initial pseudo-prior draw
  std::vector<char> usable;     // row has all J summaries finite
  std::vector<int> usable_rows; // cached indices of usable rows
  Vec mad;                      // per-coordinate mean absolute deviation scale
  int n_degenerate = 0;

  Eigen::Index size() const { return lambdas.rows(); }
  Eigen::Index dim() const { return lambdas.cols(); }
  Eigen::Index n_summaries() const { return summaries.cols(); }
  std::size_t usable_count() const { return usable_rows.size(); }

  // Per-wave row counts, indexed by wave tag.
  std::vector<std::pair<int, int>> wave_counts() const;
};

// Scaled squared distance between bank row scales: sum_c ((a_c-b_c)/mad_c)^2.
double scaled_sqdist(const Vec& a, const Vec& b, const Vec& mad);

// lambda_i ~ iid uniform over the box in search coordinates (the pseudo-prior),
// S_i = model.simulate_summaries(natural(lambda_i)). Each simulation gets a
// bounded retry budget before the error is rethrown with the offending lambda.
SimulationBank build_bank(const Model& model, const HyperBox& box, int n,
                          std::uint64_t seed, int threads = 0);

// Appends per_point fresh simulations at each given point (search
// coordinates), tagged with wave_tag. Scales are recomputed.
SimulationBank augment_bank(const SimulationBank& bank, const Model& model,
                            const HyperBox& box,
                            const std::vector<HyperPoint>& points, int per_point,
                            int wave_tag, std::uint64_t seed, int threads = 0);

// Indices of the k usable rows nearest to target (search coordinates) under
// the mad-scaled Euclidean metric; ties break toward the lower row index.
std::vector<int> nearest(const SimulationBank& bank, const HyperPoint& target, int k);

// Same, also returning the scaled distances (sorted ascending).
std::vector<std::pair<int, double>> nearest_with_distance(const SimulationBank& bank,
                                                          const HyperPoint& target,
                                                          int k);

// CSV snapshot (RFC-4180, header wave,lambda_1..d,s_1..J) so expensive banks
// can be reused across CLI invocations.
void save_bank(const SimulationBank& bank, const std::string& path);
SimulationBank load_bank(const std::string& path);

}  // namespace histmatch
