#include "fsmj/greedy_rank.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fsmj/errors.hpp"

namespace fsmj {

namespace {

// Below this many candidates the thread start-up cost dominates.
constexpr std::size_t kMinCandidatesPerThread = 2048;

std::size_t resolve_top_k(const MnbModel& model, const RankOptions& options) {
  const std::size_t m = model.num_features();
  const std::size_t k = options.top_k.value_or(m);
  if (k == 0 || k > m)
    throw RangeError("top_k must be in [1, " + std::to_string(m) + "], got " + std::to_string(k));
  if (options.js.reference == Reference::kComplement && model.num_classes() < 2)
    throw ConfigError("complement reference needs at least two classes");
  return k;
}

std::string method_tag(const JsOptions& js) {
  std::string tag = "fsmj";
  if (js.reference == Reference::kComplement) tag += "-complement";
  if (js.weighted) tag += "-weighted";
  return tag;
}

// Scores closer than this (relative to the best) count as tied, so rounding
// noise cannot reorder features whose gains are equal in exact arithmetic.
constexpr double kTieTolerance = 1e-12;

// Lowest candidate position whose score is within the tie tolerance of the
// maximum. Depends only on the score vector, never on how it was computed.
std::size_t pick_best(std::span<const double> scores) {
  const double top = *std::max_element(scores.begin(), scores.end());
  if (std::isinf(top)) throw DomainError("js: class distribution not dominated by its complement");
  const double cutoff = top - kTieTolerance * std::max(1.0, std::abs(top));
  for (std::size_t k = 0; k < scores.size(); ++k)
    if (scores[k] >= cutoff) return k;
  return 0;
}

// Per-step state shared read-only by every candidate evaluation.
class IncrementalScorer {
 public:
  IncrementalScorer(const MnbModel& model, const JsOptions& js)
      : model_(model), js_(js), n_(model.num_classes()), m_(model.num_features()) {
    // Column-major copy so one feature's class values are contiguous.
    columns_.resize(n_ * m_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto theta = model.theta(static_cast<ClassIndex>(i));
      for (std::size_t j = 0; j < m_; ++j) columns_[j * n_ + i] = theta[j];
    }
    // A feature's own cell term never changes between steps.
    feature_term_.resize(m_);
    for (std::size_t j = 0; j < m_; ++j) feature_term_[j] = js_cell_term(column(j), model.priors(), js_);
    selected_mass_.assign(n_, 0.0);
  }

  std::span<const double> column(std::size_t j) const { return {columns_.data() + j * n_, n_}; }

  double score(FeatureIndex candidate, std::vector<double>& scratch) const {
    const auto col = column(candidate);
    for (std::size_t i = 0; i < n_; ++i) scratch[i] = remainder_mass(selected_mass_[i] + col[i]);
    return selected_term_ + feature_term_[candidate] + js_cell_term(scratch, model_.priors(), js_);
  }

  void select(FeatureIndex j) {
    selected_term_ += feature_term_[j];
    const auto col = column(j);
    for (std::size_t i = 0; i < n_; ++i) selected_mass_[i] += col[i];
  }

  std::size_t num_classes() const { return n_; }

 private:
  const MnbModel& model_;
  JsOptions js_;
  std::size_t n_;
  std::size_t m_;
  std::vector<double> columns_;
  std::vector<double> feature_term_;
  std::vector<double> selected_mass_;
  double selected_term_ = 0.0;
};

void score_range(const IncrementalScorer& scorer, std::span<const FeatureIndex> candidates, std::span<double> out) {
  std::vector<double> scratch(scorer.num_classes());
  for (std::size_t k = 0; k < candidates.size(); ++k) out[k] = scorer.score(candidates[k], scratch);
}

void score_all(const IncrementalScorer& scorer, std::span<const FeatureIndex> candidates, std::span<double> out,
               unsigned threads) {
  const std::size_t chunks =
      std::min<std::size_t>(threads, std::max<std::size_t>(1, candidates.size() / kMinCandidatesPerThread));
  if (chunks <= 1) return score_range(scorer, candidates, out);

  std::vector<std::thread> workers;
  const std::size_t per = (candidates.size() + chunks - 1) / chunks;
  for (std::size_t t = 0; t < chunks; ++t) {
    const std::size_t lo = std::min(candidates.size(), t * per);
    const std::size_t hi = std::min(candidates.size(), lo + per);
    workers.emplace_back(
        [&, lo, hi] { score_range(scorer, candidates.subspan(lo, hi - lo), out.subspan(lo, hi - lo)); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace

FeatureRanking rank(const MnbModel& model, const RankOptions& options) {
  const std::size_t top_k = resolve_top_k(model, options);
  const unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());

  IncrementalScorer scorer(model, options.js);
  std::vector<FeatureIndex> remaining(model.num_features());
  for (std::size_t j = 0; j < remaining.size(); ++j) remaining[j] = static_cast<FeatureIndex>(j);

  FeatureRanking ranking;
  ranking.method_tag = method_tag(options.js);
  ranking.order.reserve(top_k);
  ranking.scores.reserve(top_k);
  std::vector<double> scores(remaining.size());
  for (std::size_t step = 0; step < top_k; ++step) {
    const std::span<double> live(scores.data(), remaining.size());
    score_all(scorer, remaining, live, threads);
    // `remaining` stays sorted, so the first tied position is the lowest index.
    const std::size_t pos = pick_best(live);
    const FeatureIndex chosen = remaining[pos];
    ranking.order.push_back(chosen);
    ranking.scores.push_back(live[pos]);
    scorer.select(chosen);
    remaining.erase(remaining.begin() + static_cast<long>(pos));
  }
  return ranking;
}

FeatureRanking rank_naive(const MnbModel& model, const RankOptions& options) {
  const std::size_t top_k = resolve_top_k(model, options);
  const std::size_t n = model.num_classes();
  const std::size_t m = model.num_features();

  FeatureRanking ranking;
  ranking.method_tag = method_tag(options.js);
  std::vector<bool> taken(m, false);
  std::vector<std::vector<double>> reduced(n);
  std::vector<FeatureIndex> candidates;
  std::vector<double> scores;
  for (std::size_t step = 0; step < top_k; ++step) {
    candidates.clear();
    scores.clear();
    for (std::size_t j = 0; j < m; ++j) {
      if (taken[j]) continue;
      for (std::size_t i = 0; i < n; ++i)
        reduced[i] = reduce(model.theta(static_cast<ClassIndex>(i)), ranking.order, static_cast<FeatureIndex>(j)).cells;
      candidates.push_back(static_cast<FeatureIndex>(j));
      scores.push_back(js(reduced, model.priors(), options.js));
    }
    const std::size_t pos = pick_best(scores);
    ranking.order.push_back(candidates[pos]);
    ranking.scores.push_back(scores[pos]);
    taken[candidates[pos]] = true;
  }
  return ranking;
}

std::vector<double> js_trajectory(const MnbModel& model, std::span<const FeatureIndex> order,
                                  const JsOptions& options) {
  const std::size_t n = model.num_classes();
  std::vector<double> values;
  values.reserve(order.size());
  std::vector<std::vector<double>> reduced(n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i)
      reduced[i] = reduce(model.theta(static_cast<ClassIndex>(i)), order.first(k), order[k]).cells;
    values.push_back(js(reduced, model.priors(), options));
  }
  return values;
}

}  // namespace fsmj
