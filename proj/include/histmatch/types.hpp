#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace histmatch {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Scale { linear, log };

// A hyperparameter vector. Whether the entries are in natural or search
// (log-transformed) coordinates is a property of the interface; banks, designs
// and the engine work in search coordinates, models receive natural ones.
struct HyperPoint {
  Vec values;

  HyperPoint() = default;
  explicit HyperPoint(Vec v) : values(std::move(v)) {}
  HyperPoint(std::initializer_list<double> v)
      : values(Eigen::Map<const Vec>(v.begin(), static_cast<Eigen::Index>(v.size()))) {}

  Eigen::Index dim() const { return values.size(); }
  double operator[](Eigen::Index i) const { return values[i]; }
  bool finite() const { return values.allFinite(); }
};

// Admissible hyperparameter rectangle. Natural-scale bounds plus a per-
// coordinate scale flag; log coordinates are searched in log space.
class HyperBox {
 public:
  HyperBox(Vec lower, Vec upper, std::vector<Scale> scale = {});

  Eigen::Index dim() const { return lower_.size(); }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  Scale scale(Eigen::Index i) const { return scale_[static_cast<std::size_t>(i)]; }
  const std::vector<Scale>& scales() const { return scale_; }

  const Vec& search_lower() const { return search_lower_; }
  const Vec& search_upper() const { return search_upper_; }

  Vec to_search(const Vec& natural) const;
  Vec to_natural(const Vec& search) const;

  bool contains_natural(const Vec& x) const;  // closed box
  bool contains_search(const Vec& x) const;

  // Fold a search-space point into the box by reflecting at the faces.
  Vec reflect_into_box(Vec search) const;

 private:
  Vec lower_, upper_;
  std::vector<Scale> scale_;
  Vec search_lower_, search_upper_;
};

// J univariate data summaries; a NaN entry flags a degenerate summary for
// that simulation (e.g. log|median| at median zero).
struct SummaryVector {
  Vec values;

  SummaryVector() = default;
  explicit SummaryVector(Vec v) : values(std::move(v)) {}

  Eigen::Index size() const { return values.size(); }
  bool degenerate() const { return !values.allFinite(); }
};

enum class CheckKind { implausible, plausible };

// One prior predictive check: hypothetical value h for summary j, to be
// implausible (p < alpha required) or plausible (p >= alpha required).
struct Constraint {
  int summary = 0;
  double value = 0.0;
  CheckKind kind = CheckKind::implausible;
  double alpha = 0.05;
};

class ConstraintSet {
 public:
  ConstraintSet() = default;

  void add(int summary, double value, CheckKind kind, double alpha);
  void add_implausible(int summary, double value, double alpha = 0.05) {
    add(summary, value, CheckKind::implausible, alpha);
  }
  void add_plausible(int summary, double value, double alpha = 0.05) {
    add(summary, value, CheckKind::plausible, alpha);
  }

  const std::vector<Constraint>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  // Sorted unique summary indices referenced by any check.
  std::vector<int> referenced_summaries() const;

  // Upper bound of the implausibility score:
  // sum_I (1 - alpha) + sum_P alpha.
  double score_upper_bound() const;

  void validate() const;  // throws std::invalid_argument on a bad set

 private:
  std::vector<Constraint> items_;
};

// Estimated prior predictive p-value for one check.
struct PValueEstimate {
  int summary = 0;
  double value = 0.0;           // the hypothetical value h
  CheckKind kind = CheckKind::implausible;
  double p = 0.0;               // estimate in [0,1]
  std::size_t count = 0;        // sample count the estimate used
};

struct ImplausibilityResult {
  HyperPoint lambda;                    // natural scale when filled by the engine
  std::vector<PValueEstimate> pvalues;  // aligned with the constraint set
  double score = 0.0;                   // I(lambda)
  bool boundary = false;                // some implausible p-hat exactly equals alpha
};

// I(lambda) = sum_I max(0, p - alpha) + sum_P max(0, alpha - p).
// pvals must align 1:1 with cs.items() by (summary, kind, value).
ImplausibilityResult implausibility(const std::vector<PValueEstimate>& pvals,
                                    const ConstraintSet& cs);

// True iff every check holds with the inequalities as written: implausible
// strictly below alpha, plausible at or above alpha.
bool satisfies(const ImplausibilityResult& result);

std::string to_string(CheckKind kind);
CheckKind check_kind_from_string(const std::string& s);
std::string to_string(Scale scale);
Scale scale_from_string(const std::string& s);

}  // namespace histmatch
