#include "fsmj/ranking_io.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fsmj/errors.hpp"
#include "test_util.hpp"

namespace fsmj {
namespace {

FeatureRanking sample() {
  FeatureRanking r;
  r.order = {2, 0, 1};
  r.scores = {0.203498450158393377, 0.31234567890123456, 1.0 / 3.0};
  r.method_tag = "fsmj";
  return r;
}

TEST(RankingIo, WritesOneRankedLinePerFeature) {
  const Vocabulary vocab({"alpha", "beta", "gamma"}, {3, 4, 5});
  std::ostringstream out;
  write_ranking(sample(), &vocab, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("1\t2\tgamma\t0.2034984501583933", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("2\t0\talpha\t", 0), 0u);
}

TEST(RankingIo, TermColumnIsDashWithoutVocabulary) {
  std::ostringstream out;
  write_ranking(sample(), nullptr, out);
  EXPECT_EQ(out.str().rfind("1\t2\t-\t", 0), 0u);
}

TEST(RankingIo, RoundTripKeepsScoresExactly) {
  testing::TempDir dir;
  const auto r = sample();
  write_ranking(r, nullptr, dir / "ig-max.tsv");
  const auto back = read_ranking(dir / "ig-max.tsv");
  EXPECT_EQ(back.order, r.order);
  EXPECT_EQ(back.scores, r.scores);
  EXPECT_EQ(back.method_tag, "ig-max");
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

TEST(RankingIo, ParseErrorsCarryLineNumbers) {
  testing::TempDir dir;
  write_text(dir / "a.tsv", "1\t0\tx\t0.5\n2\t1\ty\n");
  try {
    read_ranking(dir / "a.tsv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  write_text(dir / "b.tsv", "1\t0\tx\t0.5\n3\t1\ty\t0.1\n");
  EXPECT_THROW(read_ranking(dir / "b.tsv"), ParseError);
  write_text(dir / "c.tsv", "1\t0\tx\t0.5z\n");
  EXPECT_THROW(read_ranking(dir / "c.tsv"), ParseError);
  write_text(dir / "d.tsv", "1\t0\tx\t0.5\n2\t0\ty\t0.1\n");
  EXPECT_THROW(read_ranking(dir / "d.tsv"), RangeError);
  EXPECT_THROW(read_ranking(dir / "missing.tsv"), ConfigError);
}

TEST(RankingIo, AcceptsCrLfAndSpaces) {
  testing::TempDir dir;
  write_text(dir / "r.tsv", "1 4 t 1.5\r\n2 3 u 0.25\r\n");
  const auto r = read_ranking(dir / "r.tsv");
  EXPECT_EQ(r.order, (std::vector<FeatureIndex>{4, 3}));
  EXPECT_EQ(r.scores, (std::vector<double>{1.5, 0.25}));
}

}  // namespace
}  // namespace fsmj
