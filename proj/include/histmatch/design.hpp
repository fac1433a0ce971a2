#pragma once

#include "histmatch/types.hpp"

#include <cstdint>
#include <vector>

namespace histmatch {

// Maximin Latin hypercube sample of r points over the box (search
// coordinates). Each 1-D projection places exactly one point per stratum of
// width (upper-lower)/r; among `restarts` LHS draws the one maximizing the
// minimum pairwise distance (measured in unit-cube coordinates) is kept.
std::vector<HyperPoint> lhs_maximin(const HyperBox& box, int r, std::uint64_t seed,
                                    int restarts = 100);

// Gaussian perturbation kernel for the wave-to-wave resampling step.
// Sigma = h^2 * V_w with V_w the sample covariance of all wave points and
// h = (4 / ((2d+1) Q))^(1/(d+4)).
struct PerturbationKernel {
  int survivor_count = 0;  // Q
  int dim = 0;             // d
  Mat wave_covariance;     // V_w
  double bandwidth = 0.0;  // h (after any multiplier)
  Mat sigma;               // h^2 V_w, possibly replaced by a fallback
  bool covariance_fallback = false;  // diagonal fallback was applied

  // Factor B with sigma = B * B^T, used for recoloring.
  Mat factor;
};

double perturbation_bandwidth(int dim, int survivor_count);

// Builds the kernel from all current-wave points (search coordinates).
// If Q < d+1 the covariance falls back to diag(half-widths^2); a singular
// V_w falls back to its diagonal plus jitter (covariance_fallback is set).
PerturbationKernel make_perturbation_kernel(const std::vector<HyperPoint>& wave_points,
                                            int survivor_count, const HyperBox& box,
                                            double bandwidth_multiplier = 1.0);

// Draws a batch of `count` points from N(center, kernel.sigma) whose
// empirical mean equals `center` exactly and whose empirical covariance
// equals kernel.sigma exactly (recoloring correction). Requires
// count - 1 >= d for the correction; smaller batches are returned raw.
// No boundary handling is applied here.
Mat perturb_batch(const Vec& center, const PerturbationKernel& kernel, int count,
                  std::uint64_t seed);

// For each survivor draws 1/gamma corrected points and reflects them into the
// box. Returns Q/gamma = r points in search coordinates.
std::vector<HyperPoint> perturb_survivors(const std::vector<HyperPoint>& survivors,
                                          const std::vector<HyperPoint>& wave_points,
                                          double gamma, const HyperBox& box,
                                          std::uint64_t seed,
                                          double bandwidth_multiplier = 1.0);

}  // namespace histmatch
