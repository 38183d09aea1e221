#include "fsmj/ranking_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "fsmj/errors.hpp"

namespace fsmj {

void write_ranking(const FeatureRanking& ranking, const Vocabulary* vocabulary, std::ostream& out) {
  out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t k = 0; k < ranking.order.size(); ++k) {
    const auto f = ranking.order[k];
    const std::string term = vocabulary && f < vocabulary->size() ? vocabulary->term(f) : "-";
    out << (k + 1) << '\t' << f << '\t' << term << '\t' << ranking.scores.at(k) << '\n';
  }
}

void write_ranking(const FeatureRanking& ranking, const Vocabulary* vocabulary, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_ranking(ranking, vocabulary, out);
  if (!out) throw ConfigError("failed writing " + path.string());
}

FeatureRanking read_ranking(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  FeatureRanking ranking;
  ranking.method_tag = path.stem().string();
  std::set<FeatureIndex> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::size_t rank = 0;
    FeatureIndex f = 0;
    std::string term, score_text;
    if (!(ss >> rank >> f >> term >> score_text)) throw ParseError("expected '<rank> <index> <term> <score>'", line_no);
    if (rank != ranking.order.size() + 1) throw ParseError("rank out of sequence", line_no);
    double score = 0.0;
    auto [ptr, ec] = std::from_chars(score_text.data(), score_text.data() + score_text.size(), score);
    if (ec != std::errc() || ptr != score_text.data() + score_text.size())
      throw ParseError("bad score '" + score_text + "'", line_no);
    if (!seen.insert(f).second)
      throw RangeError("line " + std::to_string(line_no) + ": duplicate feature index " + std::to_string(f));
    ranking.order.push_back(f);
    ranking.scores.push_back(score);
  }
  return ranking;
}

}  // namespace fsmj
