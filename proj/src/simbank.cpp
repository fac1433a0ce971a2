#include "histmatch/simbank.hpp"

#include "histmatch/csvio.hpp"
#include "histmatch/parallel.hpp"
#include "histmatch/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace histmatch {

namespace {

constexpr std::uint64_t kBankTag = 0x42414e4b2d524f57ull;
constexpr int kRetryBudget = 3;

SummaryVector simulate_with_retries(const Model& model, const HyperPoint& lambda,
                                    std::uint64_t seed) {
  for (int attempt = 0;; ++attempt) {
    try {
      return model.simulate_summaries(lambda, mix64(seed, static_cast<std::uint64_t>(attempt)));
    } catch (const std::exception& e) {
      if (attempt + 1 >= kRetryBudget) {
        std::string msg = "simulation failed after retries at lambda = [";
        for (Eigen::Index i = 0; i < lambda.dim(); ++i) {
          if (i) msg += ", ";
          msg += std::to_string(lambda[i]);
        }
        msg += "]: ";
        msg += e.what();
        throw std::runtime_error(msg);
      }
    }
  }
}

// Mean absolute deviation about the arithmetic mean, over usable rows.
void refresh_scales(SimulationBank& bank) {
  bank.usable.assign(static_cast<std::size_t>(bank.size()), 1);
  bank.usable_rows.clear();
  bank.n_degenerate = 0;
  for (Eigen::Index i = 0; i < bank.size(); ++i) {
    if (bank.summaries.row(i).allFinite()) {
      bank.usable_rows.push_back(static_cast<int>(i));
    } else {
      bank.usable[static_cast<std::size_t>(i)] = 0;
      ++bank.n_degenerate;
    }
  }
  const Eigen::Index d = bank.dim();
  bank.mad = Vec::Ones(d);
  if (bank.usable_rows.empty()) return;
  Vec mean = Vec::Zero(d);
  for (int r : bank.usable_rows) mean += bank.lambdas.row(r).transpose();
  mean /= static_cast<double>(bank.usable_rows.size());
  Vec mad = Vec::Zero(d);
  for (int r : bank.usable_rows)
    mad += (bank.lambdas.row(r).transpose() - mean).cwiseAbs();
  mad /= static_cast<double>(bank.usable_rows.size());
  // A collapsed coordinate contributes equally to every distance; keep the
  // scale at 1 so rankings are unaffected and division stays safe.
  for (Eigen::Index c = 0; c < d; ++c) bank.mad[c] = mad[c] > 0.0 ? mad[c] : 1.0;
}

}  // namespace

std::vector<std::pair<int, int>> SimulationBank::wave_counts() const {
  std::map<int, int> counts;
  for (int w : wave) ++counts[w];
  return {counts.begin(), counts.end()};
}

double scaled_sqdist(const Vec& a, const Vec& b, const Vec& mad) {
  double s = 0.0;
  for (Eigen::Index c = 0; c < a.size(); ++c) {
    const double z = (a[c] - b[c]) / mad[c];
    s += z * z;
  }
  return s;
}

SimulationBank build_bank(const Model& model, const HyperBox& box, int n,
                          std::uint64_t seed, int threads) {
  if (n < 1) throw std::invalid_argument("build_bank: n must be positive");
  const Eigen::Index d = box.dim();
  const Eigen::Index j = model.n_summaries();
  SimulationBank bank;
  bank.lambdas.resize(n, d);
  bank.summaries.resize(n, j);
  bank.wave.assign(static_cast<std::size_t>(n), 0);

  const Vec lo = box.search_lower();
  const Vec wd = box.search_upper() - box.search_lower();
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    const std::uint64_t row_seed = mix64(mix64(seed, kBankTag), i);
    Rng rng(row_seed);
    Vec s(d);
    for (Eigen::Index c = 0; c < d; ++c) s[c] = lo[c] + wd[c] * rng.u01();
    const HyperPoint natural{box.to_natural(s)};
    const SummaryVector sv = simulate_with_retries(model, natural, mix64(row_seed, 1));
    bank.lambdas.row(static_cast<Eigen::Index>(i)) = s.transpose();
    bank.summaries.row(static_cast<Eigen::Index>(i)) = sv.values.transpose();
  });

  refresh_scales(bank);
  return bank;
}

SimulationBank augment_bank(const SimulationBank& bank, const Model& model,
                            const HyperBox& box,
                            const std::vector<HyperPoint>& points, int per_point,
                            int wave_tag, std::uint64_t seed, int threads) {
  if (points.empty()) throw std::invalid_argument("augment_bank: no points given");
  if (per_point < 0) throw std::invalid_argument("augment_bank: negative per_point");
  SimulationBank out;
  const Eigen::Index extra = static_cast<Eigen::Index>(points.size()) * per_point;
  out.lambdas.resize(bank.size() + extra, bank.dim());
  out.summaries.resize(bank.size() + extra, bank.n_summaries());
  out.lambdas.topRows(bank.size()) = bank.lambdas;
  out.summaries.topRows(bank.size()) = bank.summaries;
  out.wave = bank.wave;
  out.wave.resize(static_cast<std::size_t>(bank.size() + extra), wave_tag);

  parallel_for(static_cast<std::size_t>(extra), threads, [&](std::size_t t) {
    const std::size_t p = t / static_cast<std::size_t>(per_point);
    const std::uint64_t row_seed =
        mix64(mix64(mix64(seed, kBankTag), static_cast<std::uint64_t>(wave_tag)), t);
    const Eigen::Index row = bank.size() + static_cast<Eigen::Index>(t);
    const HyperPoint natural{box.to_natural(points[p].values)};
    const SummaryVector sv = simulate_with_retries(model, natural, row_seed);
    out.lambdas.row(row) = points[p].values.transpose();
    out.summaries.row(row) = sv.values.transpose();
  });

  refresh_scales(out);
  return out;
}

std::vector<std::pair<int, double>> nearest_with_distance(const SimulationBank& bank,
                                                          const HyperPoint& target,
                                                          int k) {
  if (k < 1 || static_cast<std::size_t>(k) > bank.usable_count())
    throw std::invalid_argument("nearest: k exceeds usable bank rows");
  std::vector<std::pair<int, double>> all;
  all.reserve(bank.usable_count());
  for (int r : bank.usable_rows)
    all.emplace_back(r, scaled_sqdist(bank.lambdas.row(r).transpose(), target.values, bank.mad));
  auto cmp = [](const auto& a, const auto& b) {
    return a.second < b.second || (a.second == b.second && a.first < b.first);
  };
  std::partial_sort(all.begin(), all.begin() + k, all.end(), cmp);
  all.resize(static_cast<std::size_t>(k));
  for (auto& e : all) e.second = std::sqrt(e.second);
  return all;
}

std::vector<int> nearest(const SimulationBank& bank, const HyperPoint& target, int k) {
  const auto nd = nearest_with_distance(bank, target, k);
  std::vector<int> idx;
  idx.reserve(nd.size());
  for (const auto& e : nd) idx.push_back(e.first);
  return idx;
}

void save_bank(const SimulationBank& bank, const std::string& path) {
  CsvWriter csv(path);
  std::vector<std::string> row;
  row.push_back("wave");
  for (Eigen::Index c = 0; c < bank.dim(); ++c)
    row.push_back("lambda_" + std::to_string(c + 1));
  for (Eigen::Index c = 0; c < bank.n_summaries(); ++c)
    row.push_back("s_" + std::to_string(c + 1));
  csv.write_row(row);
  for (Eigen::Index i = 0; i < bank.size(); ++i) {
    row.clear();
    row.push_back(std::to_string(bank.wave[static_cast<std::size_t>(i)]));
    for (Eigen::Index c = 0; c < bank.dim(); ++c)
      row.push_back(CsvWriter::format_double(bank.lambdas(i, c)));
    for (Eigen::Index c = 0; c < bank.n_summaries(); ++c)
      row.push_back(CsvWriter::format_double(bank.summaries(i, c)));
    csv.write_row(row);
  }
  csv.close();
}

SimulationBank load_bank(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.empty() || table.header[0] != "wave")
    throw std::runtime_error("bank file " + path + ": unexpected header");
  Eigen::Index d = 0, j = 0;
  for (const auto& h : table.header) {
    if (h.rfind("lambda_", 0) == 0) ++d;
    if (h.rfind("s_", 0) == 0) ++j;
  }
  if (d == 0 || j == 0 || table.header.size() != static_cast<std::size_t>(1 + d + j))
    throw std::runtime_error("bank file " + path + ": malformed header");
  const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
  if (n == 0) throw std::runtime_error("bank file " + path + ": empty bank");
  SimulationBank bank;
  bank.lambdas.resize(n, d);
  bank.summaries.resize(n, j);
  bank.wave.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = table.rows[static_cast<std::size_t>(i)];
    if (r.size() != table.header.size())
      throw std::runtime_error("bank file " + path + ": ragged row");
    bank.wave[static_cast<std::size_t>(i)] = std::stoi(r[0]);
    for (Eigen::Index c = 0; c < d; ++c)
      bank.lambdas(i, c) = std::stod(r[static_cast<std::size_t>(1 + c)]);
    for (Eigen::Index c = 0; c < j; ++c) {
      const std::string& f = r[static_cast<std::size_t>(1 + d + c)];
      bank.summaries(i, c) =
          (f == "nan" || f == "-nan") ? std::numeric_limits<double>::quiet_NaN() : std::stod(f);
    }
  }
  refresh_scales(bank);
  return bank;
}

}  // namespace histmatch
