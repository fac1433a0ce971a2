#include "histmatch/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace histmatch {

HyperBox::HyperBox(Vec lower, Vec upper, std::vector<Scale> scale)
    : lower_(std::move(lower)), upper_(std::move(upper)), scale_(std::move(scale)) {
  if (lower_.size() != upper_.size() || lower_.size() == 0)
    throw std::invalid_argument("HyperBox: lower/upper must be nonempty and equal length");
  if (scale_.empty()) scale_.assign(static_cast<std::size_t>(lower_.size()), Scale::linear);
  if (static_cast<Eigen::Index>(scale_.size()) != lower_.size())
    throw std::invalid_argument("HyperBox: scale length mismatch");
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]))
      throw std::invalid_argument("HyperBox: non-finite bound");
    if (!(lower_[i] < upper_[i]))
      throw std::invalid_argument("HyperBox: lower must be strictly below upper");
    if (scale_[static_cast<std::size_t>(i)] == Scale::log && !(lower_[i] > 0.0))
      throw std::invalid_argument("HyperBox: log-scaled coordinate requires lower > 0");
  }
  search_lower_ = to_search(lower_);
  search_upper_ = to_search(upper_);
}

Vec HyperBox::to_search(const Vec& natural) const {
  Vec s = natural;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (scale_[static_cast<std::size_t>(i)] == Scale::log) s[i] = std::log(s[i]);
  return s;
}

Vec HyperBox::to_natural(const Vec& search) const {
  Vec n = search;
  for (Eigen::Index i = 0; i < n.size(); ++i)
    if (scale_[static_cast<std::size_t>(i)] == Scale::log) n[i] = std::exp(n[i]);
  return n;
}

bool HyperBox::contains_natural(const Vec& x) const {
  if (x.size() != lower_.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
  return true;
}

bool HyperBox::contains_search(const Vec& x) const {
  if (x.size() != lower_.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] >= search_lower_[i] && x[i] <= search_upper_[i])) return false;
  return true;
}

Vec HyperBox::reflect_into_box(Vec search) const {
  for (Eigen::Index i = 0; i < search.size(); ++i) {
    const double lo = search_lower_[i];
    const double hi = search_upper_[i];
    const double w = hi - lo;
    double t = std::fmod(search[i] - lo, 2.0 * w);
    if (t < 0.0) t += 2.0 * w;
    search[i] = lo + (t <= w ? t : 2.0 * w - t);
  }
  return search;
}

void ConstraintSet::add(int summary, double value, CheckKind kind, double alpha) {
  if (summary < 0) throw std::invalid_argument("ConstraintSet: negative summary index");
  if (!std::isfinite(value)) throw std::invalid_argument("ConstraintSet: non-finite hypothetical value");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ConstraintSet: alpha must lie in (0,1)");
  items_.push_back(Constraint{summary, value, kind, alpha});
}

std::vector<int> ConstraintSet::referenced_summaries() const {
  std::vector<int> out;
  for (const auto& c : items_) out.push_back(c.summary);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double ConstraintSet::score_upper_bound() const {
  double b = 0.0;
  for (const auto& c : items_)
    b += (c.kind == CheckKind::implausible) ? (1.0 - c.alpha) : c.alpha;
  return b;
}

void ConstraintSet::validate() const {
  if (items_.empty()) throw std::invalid_argument("ConstraintSet: at least one check required");
}

ImplausibilityResult implausibility(const std::vector<PValueEstimate>& pvals,
                                    const ConstraintSet& cs) {
  if (pvals.size() != cs.size())
    throw std::invalid_argument("implausibility: constraint/p-value count mismatch");
  ImplausibilityResult out;
  out.pvalues = pvals;
  for (std::size_t i = 0; i < pvals.size(); ++i) {
    const Constraint& c = cs.items()[i];
    const PValueEstimate& e = pvals[i];
    if (e.summary != c.summary || e.kind != c.kind || e.value != c.value)
      throw std::invalid_argument("implausibility: p-value does not match its constraint");
    if (!(e.p >= 0.0 && e.p <= 1.0))
      throw std::invalid_argument("implausibility: p-value outside [0,1]");
    if (c.kind == CheckKind::implausible) {
      out.score += std::max(0.0, e.p - c.alpha);
      if (e.p == c.alpha) out.boundary = true;
    } else {
      out.score += std::max(0.0, c.alpha - e.p);
    }
  }
  return out;
}

bool satisfies(const ImplausibilityResult& result) {
  return result.score == 0.0 && !result.boundary;
}

std::string to_string(CheckKind kind) {
  return kind == CheckKind::implausible ? "implausible" : "plausible";
}

CheckKind check_kind_from_string(const std::string& s) {
  if (s == "implausible") return CheckKind::implausible;
  if (s == "plausible") return CheckKind::plausible;
  throw std::invalid_argument("unknown check kind: " + s);
}

std::string to_string(Scale scale) { return scale == Scale::log ? "log" : "linear"; }

Scale scale_from_string(const std::string& s) {
  if (s == "linear") return Scale::linear;
  if (s == "log") return Scale::log;
  throw std::invalid_argument("unknown scale: " + s);
}

}  // namespace histmatch
