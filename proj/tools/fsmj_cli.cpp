// fsmj: command-line front end for corpus ingestion, MNB training, feature
// ranking (FSMJ and the six baselines) and accuracy-curve evaluation.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fsmj/baselines.hpp"
#include "fsmj/corpus.hpp"
#include "fsmj/errors.hpp"
#include "fsmj/eval.hpp"
#include "fsmj/greedy_rank.hpp"
#include "fsmj/mnb.hpp"
#include "fsmj/ranking_io.hpp"

namespace {

using fsmj::ConfigError;

std::string vocab_or_default(const std::string& vocab, const std::string& corpus) {
  return vocab.empty() ? fsmj::default_vocab_path(corpus).string() : vocab;
}

fsmj::JsOptions js_options(const std::string& reference, bool weighted) {
  fsmj::JsOptions js;
  if (reference == "complement")
    js.reference = fsmj::Reference::kComplement;
  else if (reference != "mixture")
    throw ConfigError("--reference must be 'mixture' or 'complement'");
  js.weighted = weighted;
  return js;
}

std::vector<std::size_t> parse_ks(const std::string& text) {
  std::vector<std::size_t> ks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty()) throw ConfigError("empty entry in --ks");
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ConfigError("bad --ks entry '" + item + "'");
    ks.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

void report_grid_means(const std::vector<fsmj::CurvePoint>& points, const std::string& summary_out) {
  const auto means = fsmj::grid_means(points);
  if (!summary_out.empty()) fsmj::emit_summary_csv(means, summary_out);
  std::cout << fsmj::format_summary_csv(means);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feature ranking by maximum Jensen-Shannon divergence for text categorization"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Tokenize a directory of class folders into a sparse corpus");
  std::string input_dir, stopwords_path, corpus_out, vocab_out, vocab_in;
  std::uint64_t min_df = 3;
  ingest->add_option("--input", input_dir, "Directory with one sub-directory of .txt files per class")->required();
  ingest->add_option("--min-df", min_df, "Drop terms found in fewer documents")->capture_default_str();
  ingest->add_option("--stopwords", stopwords_path, "Optional stopword file, one word per line");
  ingest->add_option("--out", corpus_out, "Sparse corpus file to write")->required();
  ingest->add_option("--vocab-out", vocab_out, "Vocabulary file to write (default <out>.vocab)");
  ingest->add_option("--vocab-in", vocab_in,
                     "Vectorize against this existing vocabulary instead of building one (for test sets)");

  // train
  auto* train = app.add_subcommand("train", "Estimate a multinomial naive Bayes model");
  std::string train_corpus, train_vocab, model_out;
  double train_alpha = 1.0;
  train->add_option("--corpus", train_corpus, "Sparse corpus file")->required();
  train->add_option("--vocab", train_vocab, "Vocabulary file (default <corpus>.vocab)");
  train->add_option("--alpha", train_alpha, "Additive smoothing")->capture_default_str();
  train->add_option("--model-out", model_out, "Model file to write")->required();

  // rank
  auto* rank = app.add_subcommand("rank", "Rank features with FSMJ or a baseline metric");
  std::string rank_method = "fsmj", rank_model, rank_corpus, rank_vocab, rank_out, global_name = "max";
  std::string reference = "mixture";
  bool weighted_js = false;
  double epsilon = 0.5, rank_alpha = 1.0;
  std::size_t top = 0;
  unsigned threads = 0;
  rank->add_option("--method", rank_method, "fsmj|df|ig|chi|rs|cet|ngl")->capture_default_str();
  rank->add_option("--model", rank_model, "Model file (fsmj; otherwise trained from --corpus)");
  rank->add_option("--corpus", rank_corpus, "Sparse corpus file");
  rank->add_option("--alpha", rank_alpha, "Additive smoothing when fsmj trains from --corpus")->capture_default_str();
  rank->add_option("--vocab", rank_vocab, "Vocabulary for the term column (default <corpus>.vocab)");
  rank->add_option("--global", global_name, "Global function for baselines: sum|max|avg")->capture_default_str();
  rank->add_option("--epsilon", epsilon, "Contingency smoothing for baselines")->capture_default_str();
  rank->add_option("--top", top, "Number of features to rank (0 = all)")->capture_default_str();
  rank->add_option("--reference", reference, "JS reference: mixture|complement")->capture_default_str();
  rank->add_flag("--weighted-js", weighted_js, "Prior-weight the per-class KL terms");
  rank->add_option("--threads", threads, "Worker threads for fsmj (0 = auto)");
  rank->add_option("--out", rank_out, "Ranking file to write")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Accuracy curve of a ranking");
  std::string eval_train, eval_test, eval_vocab, eval_ranking, eval_ks, eval_out, summary_out;
  std::string method_label, global_label = "none";
  double eval_alpha = 1.0;
  bool with_macro_f1 = false;
  eval->add_option("--train", eval_train, "Training corpus")->required();
  eval->add_option("--test", eval_test, "Test corpus")->required();
  eval->add_option("--vocab", eval_vocab, "Shared vocabulary (default <train>.vocab)");
  eval->add_option("--ranking", eval_ranking, "Ranking file")->required();
  eval->add_option("--ks", eval_ks, "Comma-separated feature counts (default: log grid)");
  eval->add_option("--alpha", eval_alpha, "Additive smoothing")->capture_default_str();
  eval->add_option("--method", method_label, "Method label for the CSV (default: ranking file stem)");
  eval->add_option("--global", global_label, "Global-function label for the CSV")->capture_default_str();
  eval->add_flag("--macro-f1", with_macro_f1, "Append a macro_f1 column");
  eval->add_option("--summary-out", summary_out, "Grid-mean summary CSV");
  eval->add_option("--out", eval_out, "Curve CSV to write")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "FSMJ against all baselines and global functions");
  std::string cmp_train, cmp_test, cmp_vocab, cmp_ks, cmp_out, cmp_summary, cmp_reference = "mixture";
  double cmp_alpha = 1.0, cmp_epsilon = 0.5;
  bool cmp_weighted = false, cmp_macro_f1 = false;
  unsigned cmp_threads = 0;
  cmp->add_option("--train", cmp_train, "Training corpus")->required();
  cmp->add_option("--test", cmp_test, "Test corpus")->required();
  cmp->add_option("--vocab", cmp_vocab, "Shared vocabulary (default <train>.vocab)");
  cmp->add_option("--ks", cmp_ks, "Comma-separated feature counts (default: log grid)");
  cmp->add_option("--alpha", cmp_alpha, "Additive smoothing")->capture_default_str();
  cmp->add_option("--epsilon", cmp_epsilon, "Contingency smoothing for baselines")->capture_default_str();
  cmp->add_option("--reference", cmp_reference, "JS reference: mixture|complement")->capture_default_str();
  cmp->add_flag("--weighted-js", cmp_weighted, "Prior-weight the per-class KL terms");
  cmp->add_option("--threads", cmp_threads, "Worker threads for fsmj (0 = auto)");
  cmp->add_flag("--macro-f1", cmp_macro_f1, "Append a macro_f1 column");
  cmp->add_option("--summary-out", cmp_summary, "Grid-mean summary CSV");
  cmp->add_option("--out", cmp_out, "Combined curve CSV to write")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      std::set<std::string> stopwords;
      if (!stopwords_path.empty()) stopwords = fsmj::read_stopwords(stopwords_path);
      const auto raw = fsmj::read_raw_directory(input_dir);
      fsmj::LabeledCorpus corpus;
      if (vocab_in.empty()) {
        corpus = fsmj::build_corpus(raw, {min_df, stopwords});
      } else {
        const auto terms = fsmj::read_vocabulary_terms(vocab_in);
        corpus = fsmj::vectorize(raw, fsmj::Vocabulary(terms, std::vector<std::uint64_t>(terms.size(), 0)), stopwords);
      }
      fsmj::save_sparse(corpus, corpus_out, vocab_or_default(vocab_out, corpus_out));
      std::cerr << "ingested " << corpus.num_docs() << " documents, " << corpus.num_classes() << " classes, "
                << corpus.num_features() << " terms\n";
    } else if (*train) {
      const auto corpus = fsmj::load_sparse(train_corpus, vocab_or_default(train_vocab, train_corpus));
      fsmj::save_model(fsmj::estimate_params(corpus, train_alpha), model_out);
    } else if (*rank) {
      const std::optional<std::size_t> top_k = top ? std::optional<std::size_t>(top) : std::nullopt;
      if (rank_method == "fsmj") {
        if (rank_model.empty() && rank_corpus.empty()) throw ConfigError("--method fsmj needs --model or --corpus");
        std::optional<fsmj::LabeledCorpus> corpus;
        if (rank_model.empty()) corpus = fsmj::load_sparse(rank_corpus, vocab_or_default(rank_vocab, rank_corpus));
        const auto model = corpus ? fsmj::estimate_params(*corpus, rank_alpha) : fsmj::load_model(rank_model);
        fsmj::RankOptions options{top_k, js_options(reference, weighted_js), threads};
        const auto ranking = fsmj::rank(model, options);
        std::optional<fsmj::Vocabulary> vocab;
        if (corpus) {
          vocab = corpus->vocabulary;
        } else if (!rank_vocab.empty()) {
          auto terms = fsmj::read_vocabulary_terms(rank_vocab);
          vocab.emplace(terms, std::vector<std::uint64_t>(terms.size(), 0));
        }
        fsmj::write_ranking(ranking, vocab ? &*vocab : nullptr, rank_out);
      } else {
        if (rank_corpus.empty()) throw ConfigError("baseline methods need --corpus");
        const auto corpus = fsmj::load_sparse(rank_corpus, vocab_or_default(rank_vocab, rank_corpus));
        const auto ranking = fsmj::rank_baseline(corpus, fsmj::parse_metric(rank_method),
                                                 fsmj::parse_global_fn(global_name), epsilon, top_k);
        fsmj::write_ranking(ranking, &corpus.vocabulary, rank_out);
      }
    } else if (*eval) {
      const auto vocab = vocab_or_default(eval_vocab, eval_train);
      const auto train_c = fsmj::load_sparse(eval_train, vocab);
      const auto test_c = fsmj::load_sparse(eval_test, vocab);
      const auto ranking = fsmj::read_ranking(eval_ranking);
      auto ks = eval_ks.empty() ? fsmj::default_k_grid(ranking.size()) : parse_ks(eval_ks);
      const fsmj::CurveLabel label{method_label.empty() ? ranking.method_tag : method_label, global_label};
      const auto points = fsmj::evaluate(train_c, test_c, ranking, ks, eval_alpha, label);
      fsmj::emit_csv(points, eval_out, with_macro_f1);
      report_grid_means(points, summary_out);
    } else if (*cmp) {
      const auto vocab = vocab_or_default(cmp_vocab, cmp_train);
      const auto train_c = fsmj::load_sparse(cmp_train, vocab);
      const auto test_c = fsmj::load_sparse(cmp_test, vocab);
      fsmj::CompareOptions options;
      if (!cmp_ks.empty()) options.ks = parse_ks(cmp_ks);
      options.alpha = cmp_alpha;
      options.epsilon = cmp_epsilon;
      options.js = js_options(cmp_reference, cmp_weighted);
      options.threads = cmp_threads;
      const auto points = fsmj::compare(train_c, test_c, options);
      fsmj::emit_csv(points, cmp_out, cmp_macro_f1);
      report_grid_means(points, cmp_summary);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
