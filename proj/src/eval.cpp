#include "fsmj/eval.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "fsmj/baselines.hpp"
#include "fsmj/errors.hpp"
#include "fsmj/mnb.hpp"

namespace fsmj {

namespace {

constexpr std::uint32_t kNotSelected = UINT32_MAX;

// Maps test class indices onto the training class indices with the same name.
std::vector<ClassIndex> align_test_labels(const LabeledCorpus& train, const LabeledCorpus& test) {
  std::vector<ClassIndex> mapping(test.num_classes());
  for (std::size_t c = 0; c < test.num_classes(); ++c) {
    auto it = std::find(train.class_names.begin(), train.class_names.end(), test.class_names[c]);
    if (it == train.class_names.end())
      throw ConfigError("test class '" + test.class_names[c] + "' does not occur in the training corpus");
    mapping[c] = static_cast<ClassIndex>(it - train.class_names.begin());
  }
  std::vector<ClassIndex> labels;
  labels.reserve(test.num_docs());
  for (auto l : test.labels) labels.push_back(mapping.at(l));
  return labels;
}

double macro_f1(std::span<const ClassIndex> truth, std::span<const ClassIndex> predicted, std::size_t num_classes) {
  std::vector<std::uint64_t> tp(num_classes, 0), fp(num_classes, 0), fn(num_classes, 0);
  for (std::size_t k = 0; k < truth.size(); ++k) {
    if (truth[k] == predicted[k]) {
      ++tp[truth[k]];
    } else {
      ++fn[truth[k]];
      ++fp[predicted[k]];
    }
  }
  double sum = 0.0;
  std::size_t classes = 0;
  for (std::size_t c = 0; c < num_classes; ++c) {
    const auto denom = 2 * tp[c] + fp[c] + fn[c];
    if (denom == 0) continue;  // class neither present nor predicted
    sum += 2.0 * static_cast<double>(tp[c]) / static_cast<double>(denom);
    ++classes;
  }
  return classes ? sum / static_cast<double>(classes) : 0.0;
}

std::vector<std::size_t> resolve_ks(std::span<const std::size_t> ks, std::size_t limit) {
  if (ks.empty()) return default_k_grid(limit);
  return {ks.begin(), ks.end()};
}

auto sort_key(const CurvePoint& p) { return std::tie(p.method, p.global_fn, p.k); }

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

}  // namespace

LabeledCorpus restrict_corpus(const LabeledCorpus& corpus, std::span<const FeatureIndex> selected) {
  if (selected.empty()) throw ConfigError("feature selection is empty");
  const std::size_t m = corpus.num_features();
  std::vector<std::uint32_t> new_index(m, kNotSelected);
  std::vector<std::string> terms;
  std::vector<std::uint64_t> freqs;
  terms.reserve(selected.size());
  freqs.reserve(selected.size());
  for (std::size_t j = 0; j < selected.size(); ++j) {
    const auto s = selected[j];
    if (s >= m) throw RangeError("feature index " + std::to_string(s) + " >= " + std::to_string(m));
    if (new_index[s] != kNotSelected) throw RangeError("duplicate feature index " + std::to_string(s));
    new_index[s] = static_cast<std::uint32_t>(j);
    terms.push_back(corpus.vocabulary.term(s));
    freqs.push_back(corpus.vocabulary.doc_freq(s));
  }

  LabeledCorpus out;
  out.labels = corpus.labels;
  out.class_names = corpus.class_names;
  out.vocabulary = Vocabulary(std::move(terms), std::move(freqs));
  out.docs.reserve(corpus.num_docs());
  std::vector<SparseEntry> entries;
  for (const auto& doc : corpus.docs) {
    entries.clear();
    for (const auto& e : doc.entries())
      if (new_index[e.index] != kNotSelected) entries.push_back({new_index[e.index], e.count});
    std::sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    out.docs.emplace_back(entries);
  }
  return out;
}

std::vector<std::size_t> default_k_grid(std::size_t num_features) {
  std::vector<std::size_t> grid;
  for (std::size_t k : {10, 20, 50, 100, 200, 500, 1000, 2000, 5000})
    if (k < num_features) grid.push_back(k);
  if (num_features > 0) grid.push_back(num_features);
  return grid;
}

std::vector<CurvePoint> evaluate(const LabeledCorpus& train, const LabeledCorpus& test,
                                 const FeatureRanking& ranking, std::span<const std::size_t> ks, double alpha,
                                 const CurveLabel& label) {
  if (train.vocabulary.terms() != test.vocabulary.terms())
    throw ConfigError("train and test corpora must share the same vocabulary");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] == 0) throw RangeError("k must be positive");
    if (i > 0 && ks[i] <= ks[i - 1]) throw ConfigError("ks must be strictly ascending");
    if (ks[i] > ranking.order.size())
      throw RangeError("k = " + std::to_string(ks[i]) + " exceeds ranking length " +
                       std::to_string(ranking.order.size()));
  }
  const auto truth = align_test_labels(train, test);

  std::vector<CurvePoint> points;
  std::vector<ClassIndex> predicted(test.num_docs());
  for (auto k : ks) {
    const std::span<const FeatureIndex> prefix(ranking.order.data(), k);
    const auto model = estimate_params(restrict_corpus(train, prefix), alpha);
    const auto restricted_test = restrict_corpus(test, prefix);

    CurvePoint point;
    point.k = k;
    point.method = label.method;
    point.global_fn = label.global_fn;
    point.n_test = test.num_docs();
    for (std::size_t d = 0; d < restricted_test.num_docs(); ++d) {
      predicted[d] = classify(model, restricted_test.docs[d]).label;
      if (predicted[d] == truth[d]) ++point.correct;
    }
    point.accuracy = point.n_test ? static_cast<double>(point.correct) / static_cast<double>(point.n_test) : 0.0;
    point.macro_f1 = macro_f1(truth, predicted, train.num_classes());
    points.push_back(std::move(point));
  }
  return points;
}

std::vector<CurvePoint> compare(const LabeledCorpus& train, const LabeledCorpus& test, const CompareOptions& options) {
  const auto ks = resolve_ks(options.ks, train.num_features());
  if (ks.empty()) throw ConfigError("empty k grid");
  const std::size_t horizon = *std::max_element(ks.begin(), ks.end());

  std::vector<CurvePoint> points;
  auto append = [&](const FeatureRanking& ranking, const CurveLabel& label) {
    auto curve = evaluate(train, test, ranking, ks, options.alpha, label);
    points.insert(points.end(), curve.begin(), curve.end());
  };

  RankOptions rank_options;
  rank_options.top_k = horizon;
  rank_options.js = options.js;
  rank_options.threads = options.threads;
  const auto fsmj_ranking = rank(estimate_params(train, options.alpha), rank_options);
  append(fsmj_ranking, {fsmj_ranking.method_tag, "none"});

  append(rank_baseline(train, Metric::kDf, GlobalFn::kSum, options.epsilon, horizon), {"df", "none"});
  for (auto metric : {Metric::kIg, Metric::kChi, Metric::kRs, Metric::kCet, Metric::kNgl}) {
    for (auto fn : {GlobalFn::kSum, GlobalFn::kMax, GlobalFn::kAvg}) {
      append(rank_baseline(train, metric, fn, options.epsilon, horizon),
             {std::string(to_string(metric)), std::string(to_string(fn))});
    }
  }
  return points;
}

std::vector<GridMean> grid_means(std::span<const CurvePoint> points) {
  std::map<std::pair<std::string, std::string>, GridMean> by_key;
  for (const auto& p : points) {
    auto& g = by_key[{p.method, p.global_fn}];
    g.method = p.method;
    g.global_fn = p.global_fn;
    g.mean_accuracy += p.accuracy;
    g.mean_macro_f1 += p.macro_f1;
    ++g.points;
  }
  std::vector<GridMean> out;
  for (auto& [key, g] : by_key) {
    g.mean_accuracy /= static_cast<double>(g.points);
    g.mean_macro_f1 /= static_cast<double>(g.points);
    out.push_back(g);
  }
  return out;
}

std::string format_csv(std::span<const CurvePoint> points, bool include_macro_f1) {
  std::vector<const CurvePoint*> sorted;
  for (const auto& p : points) sorted.push_back(&p);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CurvePoint* a, const CurvePoint* b) { return sort_key(*a) < sort_key(*b); });

  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << "k,method,global_fn,accuracy,n_test" << (include_macro_f1 ? ",macro_f1" : "") << '\n';
  for (const auto* p : sorted) {
    out << p->k << ',' << p->method << ',' << p->global_fn << ',' << p->accuracy << ',' << p->n_test;
    if (include_macro_f1) out << ',' << p->macro_f1;
    out << '\n';
  }
  return out.str();
}

void emit_csv(std::span<const CurvePoint> points, const std::filesystem::path& path, bool include_macro_f1) {
  auto out = open_csv(path);
  out << format_csv(points, include_macro_f1);
  if (!out) throw ConfigError("failed writing " + path.string());
}

std::string format_summary_csv(std::span<const GridMean> means) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << "method,global_fn,grid_mean_accuracy,grid_mean_macro_f1,points\n";
  for (const auto& g : means)
    out << g.method << ',' << g.global_fn << ',' << g.mean_accuracy << ',' << g.mean_macro_f1 << ',' << g.points
        << '\n';
  return out.str();
}

void emit_summary_csv(std::span<const GridMean> means, const std::filesystem::path& path) {
  auto out = open_csv(path);
  out << format_summary_csv(means);
  if (!out) throw ConfigError("failed writing " + path.string());
}

}  // namespace fsmj
