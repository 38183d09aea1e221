#pragma once

// Accuracy-versus-feature-count evaluation: restrict train and test corpora
// to a ranking prefix, retrain MNB on the restricted training corpus, and
// score the test corpus.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsmj/corpus.hpp"
#include "fsmj/divergence.hpp"
#include "fsmj/greedy_rank.hpp"

namespace fsmj {

/// One point of an accuracy curve. evaluate() sets accuracy = correct / n_test
/// from exact counts.
struct CurvePoint {
  std::size_t k = 0;
  std::string method;
  std::string global_fn = "none";
  double accuracy = 0.0;
  std::uint64_t n_test = 0;
  std::uint64_t correct = 0;
  double macro_f1 = 0.0;
};

/// Keeps only the selected features, reindexed 0..K-1 in selection order.
/// Documents that lose every term are kept empty. Throws ConfigError on an
/// empty selection and RangeError on duplicate or out-of-range indices.
LabeledCorpus restrict_corpus(const LabeledCorpus& corpus, std::span<const FeatureIndex> selected);

/// {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, M}, limited to values <= M.
std::vector<std::size_t> default_k_grid(std::size_t num_features);

struct CurveLabel {
  std::string method;
  std::string global_fn = "none";
};

/// One CurvePoint per k. `ks` must be ascending and bounded by the ranking
/// length. Test labels are matched to training classes by name.
std::vector<CurvePoint> evaluate(const LabeledCorpus& train, const LabeledCorpus& test,
                                 const FeatureRanking& ranking, std::span<const std::size_t> ks, double alpha,
                                 const CurveLabel& label);

struct CompareOptions {
  std::vector<std::size_t> ks;  ///< empty: default_k_grid(M)
  double alpha = 1.0;
  double epsilon = 0.5;
  JsOptions js;
  unsigned threads = 0;
};

/// FSMJ plus DF and {IG, Chi, RS, CET, NGL} x {sum, max, avg}, all evaluated
/// on the same k grid. Rankings are computed from the training corpus only.
std::vector<CurvePoint> compare(const LabeledCorpus& train, const LabeledCorpus& test, const CompareOptions& options);

struct GridMean {
  std::string method;
  std::string global_fn;
  double mean_accuracy = 0.0;
  double mean_macro_f1 = 0.0;
  std::size_t points = 0;
};

/// Mean accuracy over the k grid, per (method, global_fn), sorted by key.
std::vector<GridMean> grid_means(std::span<const CurvePoint> points);

/// Header `k,method,global_fn,accuracy,n_test`, rows sorted by
/// (method, global_fn, k), accuracy with 6 decimals. With `include_macro_f1`
/// a trailing macro_f1 column is added.
void emit_csv(std::span<const CurvePoint> points, const std::filesystem::path& path, bool include_macro_f1 = false);
std::string format_csv(std::span<const CurvePoint> points, bool include_macro_f1 = false);

/// Header `method,global_fn,grid_mean_accuracy,grid_mean_macro_f1,points`.
void emit_summary_csv(std::span<const GridMean> means, const std::filesystem::path& path);
std::string format_summary_csv(std::span<const GridMean> means);

}  // namespace fsmj
