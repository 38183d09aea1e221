#pragma once

// Classical filter metrics on binary term-presence features: DF, information
// gain (IG), chi-squared (Chi), relevance score (RS), cross entropy (CET) and
// the NGL coefficient, plus the sum / max / weighted-average global functions
// that turn per-class scores into one ranking.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fsmj/corpus.hpp"
#include "fsmj/greedy_rank.hpp"

namespace fsmj {

/// Joint presence probabilities for one (feature, class) pair, in the order
/// p(x,c), p(x,c̄), p(x̄,c), p(x̄,c̄).
struct JointCells {
  double x_c = 0.0;
  double x_notc = 0.0;
  double notx_c = 0.0;
  double notx_notc = 0.0;

  double p_x() const { return x_c + x_notc; }
  double p_notx() const { return notx_c + notx_notc; }
  double p_c() const { return x_c + notx_c; }
  double p_notc() const { return x_notc + notx_notc; }
};

class ContingencyTable {
 public:
  ContingencyTable(std::size_t num_features, std::size_t num_classes, std::vector<JointCells> cells,
                   std::vector<std::uint64_t> doc_freq, std::vector<double> class_priors, std::uint64_t doc_total,
                   double epsilon);

  std::size_t num_features() const noexcept { return num_features_; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  const JointCells& cells(FeatureIndex f, ClassIndex c) const { return cells_.at(f * num_classes_ + c); }
  std::uint64_t doc_freq(FeatureIndex f) const { return doc_freq_.at(f); }
  /// Unsmoothed document fraction per class; the default avg weights.
  const std::vector<double>& class_priors() const noexcept { return class_priors_; }
  std::uint64_t doc_total() const noexcept { return doc_total_; }
  double epsilon() const noexcept { return epsilon_; }

 private:
  std::size_t num_features_;
  std::size_t num_classes_;
  std::vector<JointCells> cells_;
  std::vector<std::uint64_t> doc_freq_;
  std::vector<double> class_priors_;
  std::uint64_t doc_total_;
  double epsilon_;
};

/// Document-level presence counts, each of the four cells incremented by
/// `epsilon` before normalizing by doc_total + 4 * epsilon.
ContingencyTable build_contingency(const LabeledCorpus& corpus, double epsilon = 0.5);

enum class Metric { kDf, kIg, kChi, kRs, kCet, kNgl };
enum class GlobalFn { kSum, kMax, kAvg };

std::string_view to_string(Metric metric);
std::string_view to_string(GlobalFn fn);
/// Accepts df, ig, chi, rs, cet, ngl. Throws ConfigError otherwise.
Metric parse_metric(std::string_view name);
/// Accepts sum, max, avg (or weighted_avg). Throws ConfigError otherwise.
GlobalFn parse_global_fn(std::string_view name);

/// Local scores f(x_k, c_i), M x N, feature-major.
struct MetricMatrix {
  Metric metric = Metric::kDf;
  std::size_t num_features = 0;
  std::size_t num_classes = 0;
  std::vector<double> scores;

  double at(FeatureIndex f, ClassIndex c) const { return scores.at(f * num_classes + c); }
};

// Single-cell formulas, natural log, 0 log 0 = 0. chi and ngl return 0 for a
// zero denominator with a zero numerator and throw DomainError for a zero
// denominator otherwise; rs throws DomainError when either conditional is 0.
double ig_score(const JointCells& t);
double chi_score(const JointCells& t);
double rs_score(const JointCells& t);
double cet_score(const JointCells& t);
double ngl_score(const JointCells& t);

MetricMatrix score(const ContingencyTable& table, Metric metric);

/// Collapses the class axis: sum, max, or sum_i w_i f(x, c_i). DF is already
/// class-independent and passes through unchanged whatever the mode. Weights
/// default to the class priors; explicit weights must be a probability vector.
std::vector<double> globalize(const MetricMatrix& scores, GlobalFn fn, std::span<const double> weights);

/// Descending-score ranking of the first `top_k` features (all when nullopt);
/// ties keep the lowest feature index.
FeatureRanking ranking_from_scores(std::span<const double> scores, std::optional<std::size_t> top_k,
                                   std::string method_tag);

/// build_contingency + score + globalize + ranking_from_scores. The method
/// tag is "<metric>" for DF and "<metric>-<global>" otherwise.
FeatureRanking rank_baseline(const LabeledCorpus& corpus, Metric metric, GlobalFn fn, double epsilon = 0.5,
                             std::optional<std::size_t> top_k = std::nullopt);

}  // namespace fsmj
