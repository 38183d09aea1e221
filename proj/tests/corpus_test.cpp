#include "fsmj/corpus.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <random>
#include <regex>

#include "fsmj/errors.hpp"
#include "test_util.hpp"

namespace fsmj {
namespace {

using testing::TempDir;

// Independent tokenizer for oracle counts: regex over ASCII letters.
std::vector<std::string> regex_tokens(const std::string& text) {
  static const std::regex word("[A-Za-z]+");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), word); it != std::sregex_iterator(); ++it) {
    std::string w = it->str();
    for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (w.size() >= 2) out.push_back(w);
  }
  return out;
}

std::vector<RawDocument> random_documents(std::mt19937_64& rng, std::size_t count, std::size_t classes) {
  static const std::vector<std::string> words = {"oil",   "Wheat", "trade", "ship", "grain", "crude", "bank",
                                                 "rates", "x",     "GOLD",  "corn", "yen",   "b2c",   "money"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1), len(0, 12), cls(0, classes - 1);
  std::vector<RawDocument> docs;
  for (std::size_t k = 0; k < count; ++k) {
    std::string text;
    const auto n = len(rng);
    for (std::size_t t = 0; t < n; ++t) text += words[pick(rng)] + (t % 3 ? " " : ", ");
    docs.push_back({text, "c" + std::to_string(k < classes ? k : cls(rng))});
  }
  return docs;
}

TEST(Tokenize, LowercasesAlphabeticRuns) {
  EXPECT_EQ(tokenize("The cat, the CAT!"), (std::vector<std::string>{"the", "cat", "the", "cat"}));
}

TEST(Tokenize, EmptyInput) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, DropsShortRuns) { EXPECT_EQ(tokenize("a b2c xyz"), (std::vector<std::string>{"xyz"})); }

TEST(Tokenize, NonAsciiBytesSeparate) {
  EXPECT_EQ(tokenize("caf\xc3\xa9 ol\xc3\xa9olé"), (std::vector<std::string>{"caf", "ol", "ol"}));
}

TEST(BuildCorpus, TermBelowThresholdIsPruned) {
  std::vector<RawDocument> docs = {{"oil price", "a"}, {"oil price", "b"}, {"price", "a"}};
  auto c = build_corpus(docs, {3, {}});
  EXPECT_FALSE(c.vocabulary.find("oil"));
  ASSERT_TRUE(c.vocabulary.find("price"));
}

TEST(BuildCorpus, TermAtThresholdIsKept) {
  std::vector<RawDocument> docs = {{"oil", "a"}, {"oil oil", "b"}, {"OIL", "a"}};
  auto c = build_corpus(docs, {3, {}});
  auto idx = c.vocabulary.find("oil");
  ASSERT_TRUE(idx);
  EXPECT_EQ(c.vocabulary.doc_freq(*idx), 3u);
}

TEST(BuildCorpus, FewerThanTwoClassesIsConfigError) {
  std::vector<RawDocument> docs = {{"oil", "a"}, {"oil", "a"}};
  EXPECT_THROW(build_corpus(docs, {1, {}}), ConfigError);
}

TEST(BuildCorpus, EmptyAfterPruningIsRetained) {
  std::vector<RawDocument> docs = {{"oil", "a"}, {"oil", "b"}, {"oil", "a"}, {"rare", "b"}};
  auto c = build_corpus(docs, {2, {}});
  ASSERT_EQ(c.num_docs(), 4u);
  EXPECT_TRUE(c.docs[3].empty());
  EXPECT_EQ(c.docs[3].total_count(), 0u);
  EXPECT_EQ(c.class_names[c.labels[3]], "b");
}

TEST(BuildCorpus, StopwordsAreRemoved) {
  std::vector<RawDocument> docs = {{"the oil", "a"}, {"the oil", "b"}};
  auto c = build_corpus(docs, {1, {"the"}});
  EXPECT_FALSE(c.vocabulary.find("the"));
  EXPECT_TRUE(c.vocabulary.find("oil"));
}

// Five documents with a known token table, checked against a regex-based scan.
TEST(BuildCorpus, ExactSparseMatrixMatchesOracleScan) {
  std::vector<RawDocument> docs = {{"Oil, oil and wheat.", "crude"},
                                   {"wheat prices; OIL exports", "grain"},
                                   {"Grain grain wheat", "grain"},
                                   {"oil oil oil! and a b", "crude"},
                                   {"exports of wheat and grain", "grain"}};
  auto c = build_corpus(docs, {2, {}});
  c.validate();

  std::map<std::string, std::set<std::size_t>> seen;
  for (std::size_t k = 0; k < docs.size(); ++k)
    for (const auto& t : regex_tokens(docs[k].text)) seen[t].insert(k);
  std::vector<std::string> expected_terms;
  for (const auto& [t, ds] : seen)
    if (ds.size() >= 2) expected_terms.push_back(t);
  EXPECT_EQ(c.vocabulary.terms(), expected_terms);
  EXPECT_EQ(expected_terms, (std::vector<std::string>{"and", "exports", "grain", "oil", "wheat"}));

  for (std::size_t k = 0; k < docs.size(); ++k) {
    std::vector<std::uint32_t> dense(c.num_features(), 0);
    for (const auto& e : c.docs[k].entries()) dense[e.index] = e.count;
    const auto toks = regex_tokens(docs[k].text);
    for (std::size_t j = 0; j < c.num_features(); ++j) {
      auto expect = std::count(toks.begin(), toks.end(), c.vocabulary.term(static_cast<FeatureIndex>(j)));
      EXPECT_EQ(dense[j], static_cast<std::uint32_t>(expect)) << "doc " << k << " term " << j;
    }
  }
  EXPECT_EQ(c.class_names, (std::vector<std::string>{"crude", "grain"}));
  EXPECT_EQ(c.labels, (std::vector<ClassIndex>{0, 1, 1, 0, 1}));
  // doc 3: "oil oil oil! and a b" -> and:1 oil:3
  EXPECT_EQ(c.docs[3].entries(), (std::vector<SparseEntry>{{0, 1}, {3, 3}}));
}

TEST(BuildCorpus, VocabularyInvariantsAndPruningMonotonicity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto docs = random_documents(rng, 25, 3);
    std::size_t previous = SIZE_MAX;
    for (std::uint64_t t = 1; t <= 6; ++t) {
      const auto c = build_corpus(docs, {t, {}});
      c.validate();
      EXPECT_LE(c.num_features(), previous);
      previous = c.num_features();
      for (std::size_t i = 0; i < c.num_features(); ++i) {
        const auto fi = static_cast<FeatureIndex>(i);
        EXPECT_EQ(c.vocabulary.find(c.vocabulary.term(fi)), fi);
        EXPECT_GE(c.vocabulary.doc_freq(fi), t);
      }
      // Conservation: total_count equals retained token occurrences.
      for (std::size_t k = 0; k < docs.size(); ++k) {
        std::uint64_t expected = 0;
        for (const auto& tok : regex_tokens(docs[k].text)) expected += c.vocabulary.find(tok).has_value();
        EXPECT_EQ(c.docs[k].total_count(), expected);
      }
    }
  }
}

TEST(Vectorize, DropsUnknownTerms) {
  Vocabulary vocab({"oil", "wheat"}, {0, 0});
  std::vector<RawDocument> docs = {{"oil gold oil", "a"}, {"silver", "b"}};
  auto c = vectorize(docs, vocab);
  EXPECT_EQ(c.docs[0].entries(), (std::vector<SparseEntry>{{0, 2}}));
  EXPECT_TRUE(c.docs[1].empty());
  EXPECT_EQ(c.vocabulary.doc_freqs(), (std::vector<std::uint64_t>{1, 0}));
}

TEST(Vocabulary, RejectsDuplicates) { EXPECT_THROW(Vocabulary({"a", "a"}, {1, 1}), ConfigError); }

TEST(SparseDocument, RejectsUnsortedEntries) {
  EXPECT_THROW(SparseDocument({{3, 1}, {1, 1}}), ConfigError);
  EXPECT_THROW(SparseDocument({{1, 1}, {1, 2}}), ConfigError);
  EXPECT_THROW(SparseDocument({{1, 0}}), ConfigError);
}

class SparseFileTest : public ::testing::Test {
 protected:
  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
  }
  TempDir dir;
};

TEST_F(SparseFileTest, ParsesLine) {
  write("c.txt", "earn\t0:3 5:1\nacq\t2:2\n");
  write("c.vocab", "a\nb\nc\nd\ne\nf\n");
  auto c = load_sparse(dir / "c.txt", dir / "c.vocab");
  ASSERT_EQ(c.num_docs(), 2u);
  EXPECT_EQ(c.docs[0].entries(), (std::vector<SparseEntry>{{0, 3}, {5, 1}}));
  EXPECT_EQ(c.docs[0].total_count(), 4u);
  EXPECT_EQ(c.class_names[c.labels[0]], "earn");
  EXPECT_EQ(c.vocabulary.doc_freq(0), 1u);
}

TEST_F(SparseFileTest, AcceptsSpaceAfterClassName) {
  write("c.txt", "earn 0:3 5:1\n");
  write("c.vocab", "a\nb\nc\nd\ne\nf\n");
  auto c = load_sparse(dir / "c.txt", dir / "c.vocab");
  EXPECT_EQ(c.docs[0].entries(), (std::vector<SparseEntry>{{0, 3}, {5, 1}}));
}

TEST_F(SparseFileTest, EmptyDocumentLine) {
  write("c.txt", "earn\t\nacq\t0:1\n");
  write("c.vocab", "a\n");
  auto c = load_sparse(dir / "c.txt", dir / "c.vocab");
  EXPECT_TRUE(c.docs[0].empty());
}

TEST_F(SparseFileTest, OutOfRangeIndexNamesLine) {
  write("c.txt", "earn\t0:3\nacq\t0:1 6:2\n");
  write("c.vocab", "a\nb\nc\nd\ne\nf\n");
  try {
    load_sparse(dir / "c.txt", dir / "c.vocab");
    FAIL() << "expected RangeError";
  } catch (const RangeError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST_F(SparseFileTest, MalformedLineCarriesLineNumber) {
  write("c.vocab", "a\nb\n");
  for (const std::string bad : {"earn\t0-3", "earn\t1:1 0:1", "earn\t0:0", "\t0:1", "earn\t0:1  1:1", "earn\tx:1"}) {
    write("c.txt", "acq\t0:1\n" + bad + "\n");
    try {
      load_sparse(dir / "c.txt", dir / "c.vocab");
      FAIL() << "expected ParseError for '" << bad << "'";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 2u) << bad;
    }
  }
}

TEST_F(SparseFileTest, RoundTripOfBuiltCorpora) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto corpus = build_corpus(random_documents(rng, 30, 4), {2, {}});
    save_sparse(corpus, dir / "rt.txt", dir / "rt.vocab");
    EXPECT_EQ(load_sparse(dir / "rt.txt", dir / "rt.vocab"), corpus);
  }
}

TEST_F(SparseFileTest, ReadsRawDirectory) {
  std::filesystem::create_directories(dir / "raw/grain");
  std::filesystem::create_directories(dir / "raw/crude");
  std::ofstream(dir / "raw/grain/2.txt") << "wheat";
  std::ofstream(dir / "raw/grain/1.txt") << "corn";
  std::ofstream(dir / "raw/crude/a.txt") << "oil";
  std::ofstream(dir / "raw/crude/skip.md") << "ignored";
  auto docs = read_raw_directory(dir / "raw");
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].class_name, "crude");
  EXPECT_EQ(docs[1].text, "corn");
  EXPECT_EQ(docs[2].text, "wheat");
}

TEST_F(SparseFileTest, StopwordFile) {
  write("stop.txt", "The\n\nand\n");
  EXPECT_EQ(read_stopwords(dir / "stop.txt"), (std::set<std::string>{"the", "and"}));
}

}  // namespace
}  // namespace fsmj
