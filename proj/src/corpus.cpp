#include "fsmj/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>

#include "fsmj/errors.hpp"

namespace fsmj {

namespace {

bool is_ascii_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char ascii_lower(unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c + ('a' - 'A') : c); }

std::vector<std::string> sorted_class_names(std::span<const RawDocument> documents) {
  std::set<std::string> names;
  for (const auto& d : documents) names.insert(d.class_name);
  return {names.begin(), names.end()};
}

ClassIndex class_index_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::lower_bound(names.begin(), names.end(), name);
  return static_cast<ClassIndex>(it - names.begin());
}

std::vector<std::uint64_t> count_doc_freq(const std::vector<SparseDocument>& docs, std::size_t m) {
  std::vector<std::uint64_t> df(m, 0);
  for (const auto& d : docs)
    for (const auto& e : d.entries()) ++df[e.index];
  return df;
}

// Per-document token counts over a fixed term -> index map.
SparseDocument count_terms(const std::vector<std::string>& tokens,
                           const std::unordered_map<std::string, FeatureIndex>& index_of,
                           const std::set<std::string>& stopwords) {
  std::map<FeatureIndex, std::uint32_t> counts;
  for (const auto& t : tokens) {
    if (stopwords.count(t)) continue;
    auto it = index_of.find(t);
    if (it != index_of.end()) ++counts[it->second];
  }
  std::vector<SparseEntry> entries;
  entries.reserve(counts.size());
  for (auto [idx, c] : counts) entries.push_back({idx, c});
  return SparseDocument(std::move(entries));
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

template <typename T>
bool parse_uint(std::string_view s, T& value) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

SparseDocument::SparseDocument(std::vector<SparseEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].count == 0) throw ConfigError("sparse entry with zero count");
    if (i > 0 && entries_[i].index <= entries_[i - 1].index)
      throw ConfigError("sparse entries must be strictly increasing by index");
    total_count_ += entries_[i].count;
  }
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> doc_freq)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)) {
  if (terms_.size() != doc_freq_.size()) throw ConfigError("vocabulary terms and doc_freq differ in size");
  index_of_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_of_.emplace(terms_[i], static_cast<FeatureIndex>(i)).second)
      throw ConfigError("duplicate vocabulary term '" + terms_[i] + "'");
  }
}

std::optional<FeatureIndex> Vocabulary::find(std::string_view term) const {
  auto it = index_of_.find(std::string(term));
  if (it == index_of_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint64_t> LabeledCorpus::class_doc_counts() const {
  std::vector<std::uint64_t> counts(class_names.size(), 0);
  for (auto l : labels) ++counts.at(l);
  return counts;
}

void LabeledCorpus::validate() const {
  if (docs.size() != labels.size()) throw ConfigError("corpus has mismatched docs and labels");
  const auto m = num_features();
  for (std::size_t k = 0; k < docs.size(); ++k) {
    if (labels[k] >= class_names.size())
      throw RangeError("document " + std::to_string(k) + " has label out of range");
    for (const auto& e : docs[k].entries())
      if (e.index >= m)
        throw RangeError("document " + std::to_string(k) + " has feature index " + std::to_string(e.index) +
                         " >= " + std::to_string(m));
  }
  auto counts = class_doc_counts();
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] == 0) throw ConfigError("class '" + class_names[i] + "' has no documents");
}

std::vector<std::string> tokenize(std::string_view raw_text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2) tokens.push_back(current);
    current.clear();
  };
  for (unsigned char c : raw_text) {
    if (is_ascii_alpha(c))
      current.push_back(ascii_lower(c));
    else
      flush();
  }
  flush();
  return tokens;
}

LabeledCorpus build_corpus(std::span<const RawDocument> documents, const BuildOptions& options) {
  if (options.min_doc_freq < 1) throw ConfigError("min_doc_freq must be >= 1");
  auto class_names = sorted_class_names(documents);
  if (class_names.size() < 2) throw ConfigError("at least 2 distinct classes are required");

  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(documents.size());
  for (const auto& d : documents) tokenized.push_back(tokenize(d.text));

  // Pass 1: document frequency over distinct tokens per document.
  std::map<std::string, std::uint64_t> df;
  for (const auto& tokens : tokenized) {
    std::set<std::string_view> seen;
    for (const auto& t : tokens) {
      if (options.stopwords.count(t)) continue;
      if (seen.insert(t).second) ++df[t];
    }
  }

  std::vector<std::string> terms;
  std::vector<std::uint64_t> freqs;
  for (const auto& [term, f] : df) {
    if (f >= options.min_doc_freq) {
      terms.push_back(term);
      freqs.push_back(f);
    }
  }

  LabeledCorpus corpus;
  corpus.class_names = class_names;
  corpus.vocabulary = Vocabulary(std::move(terms), std::move(freqs));

  // Pass 2: vectorize against the pruned vocabulary.
  std::unordered_map<std::string, FeatureIndex> index_of;
  for (std::size_t i = 0; i < corpus.vocabulary.size(); ++i)
    index_of.emplace(corpus.vocabulary.term(static_cast<FeatureIndex>(i)), static_cast<FeatureIndex>(i));
  corpus.docs.reserve(documents.size());
  corpus.labels.reserve(documents.size());
  for (std::size_t k = 0; k < documents.size(); ++k) {
    corpus.docs.push_back(count_terms(tokenized[k], index_of, options.stopwords));
    corpus.labels.push_back(class_index_of(class_names, documents[k].class_name));
  }
  return corpus;
}

LabeledCorpus vectorize(std::span<const RawDocument> documents, const Vocabulary& vocabulary,
                        const std::set<std::string>& stopwords) {
  LabeledCorpus corpus;
  corpus.class_names = sorted_class_names(documents);
  std::unordered_map<std::string, FeatureIndex> index_of;
  for (std::size_t i = 0; i < vocabulary.size(); ++i)
    index_of.emplace(vocabulary.term(static_cast<FeatureIndex>(i)), static_cast<FeatureIndex>(i));
  for (const auto& d : documents) {
    corpus.docs.push_back(count_terms(tokenize(d.text), index_of, stopwords));
    corpus.labels.push_back(class_index_of(corpus.class_names, d.class_name));
  }
  corpus.vocabulary = Vocabulary(vocabulary.terms(), count_doc_freq(corpus.docs, vocabulary.size()));
  return corpus;
}

std::vector<RawDocument> read_raw_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ConfigError(dir.string() + " is not a directory");
  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  std::sort(class_dirs.begin(), class_dirs.end());

  std::vector<RawDocument> docs;
  for (const auto& cdir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(cdir))
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      auto in = open_for_read(f);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      docs.push_back({std::move(text), cdir.filename().string()});
    }
  }
  return docs;
}

std::set<std::string> read_stopwords(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    for (auto& t : tokenize(line)) words.insert(std::move(t));
  }
  return words;
}

std::vector<std::string> read_vocabulary_terms(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    terms.push_back(line);
  }
  return terms;
}

void write_vocabulary_terms(const Vocabulary& vocabulary, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  for (const auto& t : vocabulary.terms()) out << t << '\n';
  if (!out) throw ConfigError("failed writing " + path.string());
}

LabeledCorpus load_sparse(const std::filesystem::path& corpus_path, const std::filesystem::path& vocab_path) {
  auto terms = read_vocabulary_terms(vocab_path);
  const std::size_t m = terms.size();

  auto in = open_for_read(corpus_path);
  std::vector<std::string> doc_classes;
  std::vector<SparseDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view rest(line);
    auto sep = rest.find('\t');
    if (sep == std::string_view::npos) sep = rest.find(' ');
    std::string_view name = rest.substr(0, sep);
    if (name.empty()) throw ParseError("missing class name", line_no);
    rest = sep == std::string_view::npos ? std::string_view{} : rest.substr(sep + 1);

    std::vector<SparseEntry> entries;
    while (!rest.empty()) {
      auto space = rest.find(' ');
      std::string_view tok = rest.substr(0, space);
      rest = space == std::string_view::npos ? std::string_view{} : rest.substr(space + 1);
      if (tok.empty()) throw ParseError("empty index:count token", line_no);
      auto colon = tok.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected <idx>:<count>, got '" + std::string(tok) + "'", line_no);
      SparseEntry e;
      if (!parse_uint(tok.substr(0, colon), e.index) || !parse_uint(tok.substr(colon + 1), e.count))
        throw ParseError("bad index:count token '" + std::string(tok) + "'", line_no);
      if (e.count == 0) throw ParseError("count must be positive", line_no);
      if (!entries.empty() && e.index <= entries.back().index)
        throw ParseError("indices must be strictly increasing", line_no);
      if (e.index >= m)
        throw RangeError("line " + std::to_string(line_no) + ": feature index " + std::to_string(e.index) +
                         " >= vocabulary size " + std::to_string(m));
      entries.push_back(e);
    }
    docs.emplace_back(std::move(entries));
    doc_classes.emplace_back(name);
  }

  LabeledCorpus corpus;
  std::set<std::string> names(doc_classes.begin(), doc_classes.end());
  corpus.class_names.assign(names.begin(), names.end());
  corpus.labels.reserve(doc_classes.size());
  for (const auto& c : doc_classes) corpus.labels.push_back(class_index_of(corpus.class_names, c));
  corpus.vocabulary = Vocabulary(std::move(terms), count_doc_freq(docs, m));
  corpus.docs = std::move(docs);
  return corpus;
}

void save_sparse(const LabeledCorpus& corpus, const std::filesystem::path& corpus_path,
                 const std::filesystem::path& vocab_path) {
  corpus.validate();
  for (const auto& name : corpus.class_names)
    if (name.empty() || name.find_first_of("\t\n\r ") != std::string::npos)
      throw ConfigError("class name '" + name + "' is empty or contains whitespace");
  for (const auto& t : corpus.vocabulary.terms())
    if (t.find_first_of("\n\r") != std::string::npos) throw ConfigError("vocabulary term contains a newline");

  auto out = open_for_write(corpus_path);
  for (std::size_t k = 0; k < corpus.docs.size(); ++k) {
    out << corpus.class_names[corpus.labels[k]] << '\t';
    bool first = true;
    for (const auto& e : corpus.docs[k].entries()) {
      if (!first) out << ' ';
      out << e.index << ':' << e.count;
      first = false;
    }
    out << '\n';
  }
  if (!out) throw ConfigError("failed writing " + corpus_path.string());
  write_vocabulary_terms(corpus.vocabulary, vocab_path);
}

std::filesystem::path default_vocab_path(const std::filesystem::path& corpus_path) {
  return std::filesystem::path(corpus_path.string() + ".vocab");
}

}  // namespace fsmj
