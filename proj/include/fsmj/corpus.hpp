#pragma once

// Labeled bag-of-words corpora: tokenization, vocabulary construction with
// document-frequency pruning, and the sparse text file format.
//
// Sparse corpus file, one document per line:
//
//     <class_name>\t<idx>:<count> <idx>:<count> ...
//
// Indices are 0-based and strictly increasing, counts are positive. A document
// with no retained terms is written as the class name followed by a tab. The
// companion vocabulary file holds one term per line; the line number (from 0)
// is the term index.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fsmj {

using FeatureIndex = std::uint32_t;
using ClassIndex = std::uint32_t;

struct SparseEntry {
  FeatureIndex index = 0;
  std::uint32_t count = 0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Term-count vector of one document. Entries are sorted by index with no
/// duplicates and strictly positive counts.
class SparseDocument {
 public:
  SparseDocument() = default;
  /// Throws ConfigError if entries are unsorted, duplicated, or have zero counts.
  explicit SparseDocument(std::vector<SparseEntry> entries);

  const std::vector<SparseEntry>& entries() const noexcept { return entries_; }
  std::uint64_t total_count() const noexcept { return total_count_; }
  bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const SparseDocument&, const SparseDocument&) = default;

 private:
  std::vector<SparseEntry> entries_;
  std::uint64_t total_count_ = 0;
};

/// Bidirectional term <-> index map with per-term document frequencies.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Throws ConfigError on duplicate terms or a size mismatch.
  Vocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> doc_freq);

  std::size_t size() const noexcept { return terms_.size(); }
  const std::string& term(FeatureIndex i) const { return terms_.at(i); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::uint64_t doc_freq(FeatureIndex i) const { return doc_freq_.at(i); }
  const std::vector<std::uint64_t>& doc_freqs() const noexcept { return doc_freq_; }
  std::optional<FeatureIndex> find(std::string_view term) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.terms_ == b.terms_ && a.doc_freq_ == b.doc_freq_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint64_t> doc_freq_;
  std::unordered_map<std::string, FeatureIndex> index_of_;
};

struct LabeledCorpus {
  std::vector<SparseDocument> docs;
  std::vector<ClassIndex> labels;
  std::vector<std::string> class_names;
  Vocabulary vocabulary;

  std::size_t num_docs() const noexcept { return docs.size(); }
  std::size_t num_classes() const noexcept { return class_names.size(); }
  std::size_t num_features() const noexcept { return vocabulary.size(); }

  /// Number of documents per class.
  std::vector<std::uint64_t> class_doc_counts() const;

  /// Checks label/doc alignment, label and feature ranges, and that every
  /// class owns at least one document. Throws ConfigError or RangeError.
  void validate() const;

  friend bool operator==(const LabeledCorpus&, const LabeledCorpus&) = default;
};

struct RawDocument {
  std::string text;
  std::string class_name;
};

/// Lowercased maximal runs of ASCII letters, keeping runs of length >= 2.
std::vector<std::string> tokenize(std::string_view raw_text);

struct BuildOptions {
  std::uint64_t min_doc_freq = 3;
  std::set<std::string> stopwords;
};

/// Builds a corpus whose vocabulary holds every token found in at least
/// `min_doc_freq` distinct documents. Terms are indexed in lexicographic order
/// and classes are indexed in lexicographic order of their names. Documents
/// left empty by pruning are kept.
LabeledCorpus build_corpus(std::span<const RawDocument> documents, const BuildOptions& options = {});

/// Vectorizes documents against a fixed vocabulary (no pruning); unknown terms
/// are dropped. Document frequencies are recounted over `documents`.
LabeledCorpus vectorize(std::span<const RawDocument> documents, const Vocabulary& vocabulary,
                        const std::set<std::string>& stopwords = {});

/// Reads `<dir>/<class_name>/*.txt`. Classes and files are visited in sorted order.
std::vector<RawDocument> read_raw_directory(const std::filesystem::path& dir);

/// One stopword per line; blank lines ignored; words are lowercased.
std::set<std::string> read_stopwords(const std::filesystem::path& path);

std::vector<std::string> read_vocabulary_terms(const std::filesystem::path& path);
void write_vocabulary_terms(const Vocabulary& vocabulary, const std::filesystem::path& path);

/// Loads a sparse corpus and its vocabulary file. Classes are indexed in
/// lexicographic order of their names, matching build_corpus, and document
/// frequencies are recounted from the documents. Throws ParseError (with the
/// line number) on malformed lines and RangeError on indices >= M.
LabeledCorpus load_sparse(const std::filesystem::path& corpus_path,
                          const std::filesystem::path& vocab_path);

void save_sparse(const LabeledCorpus& corpus, const std::filesystem::path& corpus_path,
                 const std::filesystem::path& vocab_path);

/// Default companion vocabulary path: `<corpus_path>.vocab`.
std::filesystem::path default_vocab_path(const std::filesystem::path& corpus_path);

}  // namespace fsmj
