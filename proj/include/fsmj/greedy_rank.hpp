#pragma once

// Greedy forward feature ranking by maximum Jensen-Shannon divergence between
// the per-class multinomials of an MNB model.
//
// At step k+1 every class distribution is coarsened to the cells
// (s_1, ..., s_k, candidate, remainder) and the candidate that maximizes js()
// over the coarsened distributions is appended to the order. Coarsening can
// only lose divergence, so the recorded JS values never decrease.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsmj/divergence.hpp"
#include "fsmj/mnb.hpp"

namespace fsmj {

/// Ordered feature indices with the score reached at each step. For FSMJ the
/// score is the maximized JS; for the baselines it is the global metric score.
struct FeatureRanking {
  std::vector<FeatureIndex> order;
  std::vector<double> scores;
  std::string method_tag;

  std::size_t size() const noexcept { return order.size(); }
};

struct RankOptions {
  /// Number of steps to run; nullopt ranks every feature.
  std::optional<std::size_t> top_k;
  JsOptions js;
  /// Worker threads for candidate scoring; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Incremental ranking: each candidate costs O(N) per step. Ties go to the
/// lowest feature index, where scores within 1e-12 (relative) count as tied.
/// The result does not depend on `threads`.
/// Throws RangeError if top_k is 0 or exceeds M.
FeatureRanking rank(const MnbModel& model, const RankOptions& options = {});

/// Reference implementation that materializes every reduced distribution and
/// calls js() on it; O(M^2 N k) overall. Kept to cross-check rank().
FeatureRanking rank_naive(const MnbModel& model, const RankOptions& options = {});

/// JS of the reductions over each prefix order[0..k], recomputed from scratch.
/// For the order produced by rank() this reproduces its scores.
std::vector<double> js_trajectory(const MnbModel& model, std::span<const FeatureIndex> order,
                                  const JsOptions& options = {});

}  // namespace fsmj
