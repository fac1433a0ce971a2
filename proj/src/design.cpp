#include "histmatch/design.hpp"

#include "histmatch/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace histmatch {

namespace {

constexpr std::uint64_t kLhsTag = 0x4c48532d54414721ull;
constexpr std::uint64_t kPerturbTag = 0x5045525455524221ull;

// One LHS draw on the unit cube: per dimension a random permutation of the
// strata with uniform jitter inside each stratum.
Mat lhs_unit(int r, int d, Rng& rng) {
  Mat u(r, d);
  std::vector<int> perm(static_cast<std::size_t>(r));
  for (int c = 0; c < d; ++c) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = r - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < r; ++i)
      u(i, c) = (static_cast<double>(perm[static_cast<std::size_t>(i)]) + rng.u01()) /
                static_cast<double>(r);
  }
  return u;
}

double min_pairwise_sqdist(const Mat& u) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = i + 1; j < u.rows(); ++j)
      best = std::min(best, (u.row(i) - u.row(j)).squaredNorm());
  return best;
}

Mat sample_covariance(const std::vector<HyperPoint>& pts, int d) {
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  Mat x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) x.row(i) = pts[static_cast<std::size_t>(i)].values;
  const Vec mean = x.colwise().mean();
  x.rowwise() -= mean.transpose();
  return (x.transpose() * x) / static_cast<double>(n - 1);
}

// Cholesky-like factor of a symmetric PSD matrix; falls back to an
// eigendecomposition with clamped eigenvalues when LLT fails.
Mat psd_factor(const Mat& s) {
  Eigen::LLT<Mat> llt(s);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  Vec ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal();
}

}  // namespace

std::vector<HyperPoint> lhs_maximin(const HyperBox& box, int r, std::uint64_t seed,
                                    int restarts) {
  if (r < 2) throw std::invalid_argument("lhs_maximin: r must be at least 2");
  if (restarts < 1) restarts = 1;
  const int d = static_cast<int>(box.dim());
  const Vec lo = box.search_lower();
  const Vec wd = box.search_upper() - box.search_lower();
  if (!(wd.minCoeff() > 0.0)) throw std::invalid_argument("lhs_maximin: degenerate box");

  Mat best;
  double best_score = -1.0;
  for (int t = 0; t < restarts; ++t) {
    Rng rng(mix64(seed, kLhsTag), static_cast<std::uint64_t>(t));
    Mat u = lhs_unit(r, d, rng);
    const double score = min_pairwise_sqdist(u);
    if (score > best_score) {
      best_score = score;
      best = std::move(u);
    }
  }

  std::vector<HyperPoint> out;
  out.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    Vec p(d);
    for (int c = 0; c < d; ++c) p[c] = lo[c] + best(i, c) * wd[c];
    out.emplace_back(std::move(p));
  }
  return out;
}

double perturbation_bandwidth(int dim, int survivor_count) {
  return std::pow(4.0 / ((2.0 * dim + 1.0) * survivor_count), 1.0 / (dim + 4.0));
}

PerturbationKernel make_perturbation_kernel(const std::vector<HyperPoint>& wave_points,
                                            int survivor_count, const HyperBox& box,
                                            double bandwidth_multiplier) {
  if (wave_points.empty()) throw std::invalid_argument("perturbation kernel: empty wave");
  const int d = static_cast<int>(box.dim());
  PerturbationKernel k;
  k.survivor_count = survivor_count;
  k.dim = d;
  k.bandwidth = perturbation_bandwidth(d, survivor_count) * bandwidth_multiplier;
  k.wave_covariance = sample_covariance(wave_points, d);
  const double h2 = k.bandwidth * k.bandwidth;

  if (survivor_count < d + 1) {
    // Too few survivors to estimate V_w reliably: squared half-widths.
    const Vec hw = 0.5 * (box.search_upper() - box.search_lower());
    k.sigma = h2 * hw.cwiseProduct(hw).asDiagonal();
    k.covariance_fallback = true;
  } else {
    k.sigma = h2 * k.wave_covariance;
    Eigen::LLT<Mat> llt(k.sigma);
    if (llt.info() != Eigen::Success || !(k.sigma.diagonal().minCoeff() > 0.0)) {
      const double jitter =
          1e-12 * std::max(1.0, k.sigma.diagonal().maxCoeff());
      k.sigma = Mat(k.wave_covariance.diagonal().asDiagonal()) * h2;
      k.sigma.diagonal().array() += jitter;
      k.covariance_fallback = true;
    }
  }
  k.factor = psd_factor(k.sigma);
  return k;
}

Mat perturb_batch(const Vec& center, const PerturbationKernel& kernel, int count,
                  std::uint64_t seed) {
  const int d = kernel.dim;
  Rng rng(seed);
  Mat z(count, d);
  for (int i = 0; i < count; ++i)
    for (int c = 0; c < d; ++c) z(i, c) = rng.normal();

  if (count - 1 >= d) {
    // Recolor so the batch has mean `center` and covariance `sigma` exactly:
    // center columns, whiten by the empirical covariance factor, recolor.
    const Vec mean = z.colwise().mean();
    z.rowwise() -= mean.transpose();
    const Mat c = (z.transpose() * z) / static_cast<double>(count - 1);
    Eigen::LLT<Mat> llt(c);
    if (llt.info() == Eigen::Success) {
      const Mat a = llt.matrixL();
      // w solves w * a^T = z, so w has identity empirical covariance.
      z = a.transpose()
              .triangularView<Eigen::Upper>()
              .solve<Eigen::OnTheRight>(z);
    }
    // A rank-deficient raw batch (vanishingly rare) is left centered only.
  }
  z = z * kernel.factor.transpose();
  z.rowwise() += center.transpose();
  return z;
}

std::vector<HyperPoint> perturb_survivors(const std::vector<HyperPoint>& survivors,
                                          const std::vector<HyperPoint>& wave_points,
                                          double gamma, const HyperBox& box,
                                          std::uint64_t seed,
                                          double bandwidth_multiplier) {
  if (survivors.empty()) throw std::invalid_argument("perturb_survivors: no survivors");
  const double inv_gamma = 1.0 / gamma;
  const int per = static_cast<int>(std::lround(inv_gamma));
  if (std::abs(inv_gamma - per) > 1e-9)
    throw std::invalid_argument("perturb_survivors: 1/gamma must be an integer");
  const auto q = static_cast<int>(survivors.size());
  if (static_cast<std::size_t>(std::lround(gamma * static_cast<double>(wave_points.size()))) !=
      survivors.size())
    throw std::invalid_argument("perturb_survivors: Q must equal gamma * r");

  const PerturbationKernel kernel =
      make_perturbation_kernel(wave_points, q, box, bandwidth_multiplier);

  std::vector<HyperPoint> out;
  out.reserve(static_cast<std::size_t>(q * per));
  for (int k = 0; k < q; ++k) {
    const Mat batch = perturb_batch(survivors[static_cast<std::size_t>(k)].values, kernel,
                                    per, mix64(mix64(seed, kPerturbTag),
                                               static_cast<std::uint64_t>(k)));
    for (int i = 0; i < per; ++i)
      out.emplace_back(box.reflect_into_box(batch.row(i).transpose()));
  }
  return out;
}

}  // namespace histmatch
