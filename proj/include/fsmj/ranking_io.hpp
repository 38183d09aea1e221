#pragma once

// Ranking file: one line per step,
//
//     <rank>\t<feature_index>\t<term>\t<score>
//
// with rank counted from 1, feature_index 0-based, and the score written with
// 17 significant digits. The term column is "-" when no vocabulary is known.

#include <filesystem>
#include <iosfwd>

#include "fsmj/corpus.hpp"
#include "fsmj/greedy_rank.hpp"

namespace fsmj {

void write_ranking(const FeatureRanking& ranking, const Vocabulary* vocabulary, const std::filesystem::path& path);
void write_ranking(const FeatureRanking& ranking, const Vocabulary* vocabulary, std::ostream& out);

/// Throws ParseError on malformed lines or ranks out of sequence, RangeError
/// on duplicated feature indices.
FeatureRanking read_ranking(const std::filesystem::path& path);

}  // namespace fsmj
