#include "fsmj/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fsmj/errors.hpp"

namespace fsmj {

namespace {

constexpr double kWeightTolerance = 1e-9;

// p log(p / q) with 0 log 0 = 0.
double plogp_ratio(double p, double q) {
  if (p == 0.0) return 0.0;
  return p * std::log(p / q);
}

double association(const JointCells& t) { return t.x_c * t.notx_notc - t.x_notc * t.notx_c; }

double cell_product(const JointCells& t) { return t.x_c * t.x_notc * t.notx_c * t.notx_notc; }

}  // namespace

ContingencyTable::ContingencyTable(std::size_t num_features, std::size_t num_classes, std::vector<JointCells> cells,
                                   std::vector<std::uint64_t> doc_freq, std::vector<double> class_priors,
                                   std::uint64_t doc_total, double epsilon)
    : num_features_(num_features),
      num_classes_(num_classes),
      cells_(std::move(cells)),
      doc_freq_(std::move(doc_freq)),
      class_priors_(std::move(class_priors)),
      doc_total_(doc_total),
      epsilon_(epsilon) {
  if (cells_.size() != num_features_ * num_classes_) throw ConfigError("contingency table has wrong size");
  if (doc_freq_.size() != num_features_) throw ConfigError("doc_freq has wrong size");
  if (class_priors_.size() != num_classes_) throw ConfigError("class_priors has wrong size");
}

ContingencyTable build_contingency(const LabeledCorpus& corpus, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be a finite non-negative number");
  corpus.validate();
  const std::size_t m = corpus.num_features();
  const std::size_t n = corpus.num_classes();
  const std::uint64_t total = corpus.num_docs();
  if (total == 0) throw ConfigError("corpus has no documents");

  // present[f * n + c] = number of class-c documents containing term f.
  std::vector<std::uint64_t> present(m * n, 0);
  std::vector<std::uint64_t> df(m, 0);
  for (std::size_t k = 0; k < corpus.num_docs(); ++k) {
    for (const auto& e : corpus.docs[k].entries()) {
      ++present[e.index * n + corpus.labels[k]];
      ++df[e.index];
    }
  }
  const auto class_docs = corpus.class_doc_counts();

  const double denom = static_cast<double>(total) + 4.0 * epsilon;
  auto prob = [&](std::uint64_t count) { return (static_cast<double>(count) + epsilon) / denom; };

  std::vector<JointCells> cells(m * n);
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::uint64_t x_c = present[f * n + c];
      const std::uint64_t x_notc = df[f] - x_c;
      const std::uint64_t notx_c = class_docs[c] - x_c;
      const std::uint64_t notx_notc = total - class_docs[c] - x_notc;
      cells[f * n + c] = {prob(x_c), prob(x_notc), prob(notx_c), prob(notx_notc)};
    }
  }

  std::vector<double> priors(n);
  for (std::size_t c = 0; c < n; ++c) priors[c] = static_cast<double>(class_docs[c]) / static_cast<double>(total);
  return ContingencyTable(m, n, std::move(cells), std::move(df), std::move(priors), total, epsilon);
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kDf: return "df";
    case Metric::kIg: return "ig";
    case Metric::kChi: return "chi";
    case Metric::kRs: return "rs";
    case Metric::kCet: return "cet";
    case Metric::kNgl: return "ngl";
  }
  return "?";
}

std::string_view to_string(GlobalFn fn) {
  switch (fn) {
    case GlobalFn::kSum: return "sum";
    case GlobalFn::kMax: return "max";
    case GlobalFn::kAvg: return "avg";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  for (auto m : {Metric::kDf, Metric::kIg, Metric::kChi, Metric::kRs, Metric::kCet, Metric::kNgl})
    if (name == to_string(m)) return m;
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

GlobalFn parse_global_fn(std::string_view name) {
  if (name == "sum") return GlobalFn::kSum;
  if (name == "max") return GlobalFn::kMax;
  if (name == "avg" || name == "weighted_avg") return GlobalFn::kAvg;
  throw ConfigError("unknown global function '" + std::string(name) + "'");
}

double cet_score(const JointCells& t) { return plogp_ratio(t.x_c, t.p_x() * t.p_c()); }

double ig_score(const JointCells& t) { return cet_score(t) + plogp_ratio(t.notx_c, t.p_notx() * t.p_c()); }

double chi_score(const JointCells& t) {
  const double num = association(t);
  const double den = cell_product(t);
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    throw DomainError("chi: zero cell with nonzero association; use epsilon > 0");
  }
  return num * num / den;
}

double ngl_score(const JointCells& t) {
  const double num = association(t);
  const double den = cell_product(t);
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    throw DomainError("ngl: zero cell with nonzero association; use epsilon > 0");
  }
  return num / std::sqrt(den);
}

double rs_score(const JointCells& t) {
  const double x_given_c = t.x_c / t.p_c();
  const double notx_given_notc = t.notx_notc / t.p_notc();
  if (!(x_given_c > 0.0) || !(notx_given_notc > 0.0))
    throw DomainError("rs: zero conditional probability; use epsilon > 0");
  return std::log(x_given_c / notx_given_notc);
}

MetricMatrix score(const ContingencyTable& table, Metric metric) {
  MetricMatrix out;
  out.metric = metric;
  out.num_features = table.num_features();
  out.num_classes = table.num_classes();
  out.scores.resize(out.num_features * out.num_classes);

  double (*local)(const JointCells&) = nullptr;
  switch (metric) {
    case Metric::kDf: break;
    case Metric::kIg: local = ig_score; break;
    case Metric::kChi: local = chi_score; break;
    case Metric::kRs: local = rs_score; break;
    case Metric::kCet: local = cet_score; break;
    case Metric::kNgl: local = ngl_score; break;
  }
  for (std::size_t f = 0; f < out.num_features; ++f) {
    for (std::size_t c = 0; c < out.num_classes; ++c) {
      const auto fi = static_cast<FeatureIndex>(f);
      out.scores[f * out.num_classes + c] =
          local ? local(table.cells(fi, static_cast<ClassIndex>(c))) : static_cast<double>(table.doc_freq(fi));
    }
  }
  return out;
}

std::vector<double> globalize(const MetricMatrix& scores, GlobalFn fn, std::span<const double> weights) {
  const std::size_t n = scores.num_classes;
  std::vector<double> out(scores.num_features);
  if (scores.metric == Metric::kDf) {
    for (std::size_t f = 0; f < out.size(); ++f) out[f] = scores.scores[f * n];
    return out;
  }
  if (fn == GlobalFn::kAvg) {
    if (weights.size() != n) throw ConfigError("expected " + std::to_string(n) + " class weights");
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw ConfigError("class weights must be non-negative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightTolerance) throw ConfigError("class weights must sum to 1");
  }
  for (std::size_t f = 0; f < out.size(); ++f) {
    const double* row = scores.scores.data() + f * n;
    switch (fn) {
      case GlobalFn::kSum: out[f] = std::accumulate(row, row + n, 0.0); break;
      case GlobalFn::kMax: out[f] = *std::max_element(row, row + n); break;
      case GlobalFn::kAvg: out[f] = std::inner_product(row, row + n, weights.begin(), 0.0); break;
    }
  }
  return out;
}

FeatureRanking ranking_from_scores(std::span<const double> scores, std::optional<std::size_t> top_k,
                                   std::string method_tag) {
  const std::size_t k = top_k.value_or(scores.size());
  if (k == 0 || k > scores.size())
    throw RangeError("top_k must be in [1, " + std::to_string(scores.size()) + "], got " + std::to_string(k));
  std::vector<FeatureIndex> order(scores.size());
  std::iota(order.begin(), order.end(), FeatureIndex{0});
  std::stable_sort(order.begin(), order.end(), [&](FeatureIndex a, FeatureIndex b) { return scores[a] > scores[b]; });
  order.resize(k);

  FeatureRanking ranking;
  ranking.method_tag = std::move(method_tag);
  ranking.order = std::move(order);
  for (auto f : ranking.order) ranking.scores.push_back(scores[f]);
  return ranking;
}

FeatureRanking rank_baseline(const LabeledCorpus& corpus, Metric metric, GlobalFn fn, double epsilon,
                             std::optional<std::size_t> top_k) {
  const auto table = build_contingency(corpus, epsilon);
  const auto local = score(table, metric);
  const auto global = globalize(local, fn, table.class_priors());
  std::string tag(to_string(metric));
  if (metric != Metric::kDf) tag += "-" + std::string(to_string(fn));
  return ranking_from_scores(global, top_k, std::move(tag));
}

}  // namespace fsmj
