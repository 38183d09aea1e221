#include "fsmj/mnb.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "fsmj/errors.hpp"

namespace fsmj {

namespace {

constexpr double kRowTolerance = 1e-9;
constexpr double kPriorTolerance = 1e-12;

std::vector<std::string> default_class_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("class" + std::to_string(i));
  return names;
}

std::vector<bool> check_distinct(std::span<const FeatureIndex> selected, std::size_t m) {
  std::vector<bool> seen(m, false);
  for (auto s : selected) {
    if (s >= m) throw RangeError("feature index " + std::to_string(s) + " >= " + std::to_string(m));
    if (seen[s]) throw RangeError("duplicate feature index " + std::to_string(s));
    seen[s] = true;
  }
  return seen;
}

}  // namespace

MnbModel::MnbModel(std::vector<double> cell_probs, std::size_t num_features, std::vector<double> priors,
                   std::vector<std::string> class_names, double alpha)
    : cell_probs_(std::move(cell_probs)),
      priors_(std::move(priors)),
      class_names_(std::move(class_names)),
      num_features_(num_features),
      alpha_(alpha) {
  const std::size_t n = priors_.size();
  if (n == 0) throw ConfigError("model needs at least one class");
  if (num_features_ == 0) throw ConfigError("model needs at least one feature");
  if (cell_probs_.size() != n * num_features_) throw ConfigError("cell probability matrix has wrong size");
  if (class_names_.empty()) class_names_ = default_class_names(n);
  if (class_names_.size() != n) throw ConfigError("class_names size differs from number of priors");

  double prior_sum = 0.0;
  for (double p : priors_) {
    if (!(p > 0.0)) throw ConfigError("every class prior must be positive");
    prior_sum += p;
  }
  if (std::abs(prior_sum - 1.0) > kPriorTolerance) throw ConfigError("class priors must sum to 1");

  log_cell_probs_.resize(cell_probs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t m = 0; m < num_features_; ++m) {
      const double p = cell_probs_[i * num_features_ + m];
      if (!(p >= 0.0) || p > 1.0) throw ConfigError("cell probabilities must lie in [0, 1]");
      row_sum += p;
      log_cell_probs_[i * num_features_ + m] = std::log(p);
    }
    if (std::abs(row_sum - 1.0) > kRowTolerance)
      throw ConfigError("cell probabilities of class " + std::to_string(i) + " do not sum to 1");
  }
}

MnbModel estimate_params(const LabeledCorpus& corpus, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be a finite non-negative number");
  corpus.validate();
  const std::size_t n = corpus.num_classes();
  const std::size_t m = corpus.num_features();
  if (m == 0) throw ConfigError("corpus has an empty vocabulary");

  std::vector<double> counts(n * m, 0.0);
  std::vector<double> totals(n, 0.0);
  for (std::size_t k = 0; k < corpus.num_docs(); ++k) {
    const auto i = corpus.labels[k];
    for (const auto& e : corpus.docs[k].entries()) {
      counts[i * m + e.index] += e.count;
      totals[i] += e.count;
    }
  }

  if (alpha == 0.0) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (counts[i * m + j] == 0.0)
          throw DegenerateModelError("alpha = 0 and class '" + corpus.class_names[i] + "' never uses term '" +
                                     corpus.vocabulary.term(static_cast<FeatureIndex>(j)) + "'");
  }

  std::vector<double> probs(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    const double denom = alpha * static_cast<double>(m) + totals[i];
    for (std::size_t j = 0; j < m; ++j) probs[i * m + j] = (alpha + counts[i * m + j]) / denom;
  }

  std::vector<double> priors(n);
  const auto doc_counts = corpus.class_doc_counts();
  for (std::size_t i = 0; i < n; ++i)
    priors[i] = static_cast<double>(doc_counts[i]) / static_cast<double>(corpus.num_docs());

  return MnbModel(std::move(probs), m, std::move(priors), corpus.class_names, alpha);
}

Classification classify(const MnbModel& model, const SparseDocument& doc) {
  Classification out;
  const std::size_t n = model.num_classes();
  out.log_scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto log_theta = model.log_theta(static_cast<ClassIndex>(i));
    double score = std::log(model.priors()[i]);
    for (const auto& e : doc.entries()) score += e.count * log_theta[e.index];
    out.log_scores[i] = score;
  }
  for (std::size_t i = 1; i < n; ++i)
    if (out.log_scores[i] > out.log_scores[out.label]) out.label = static_cast<ClassIndex>(i);
  return out;
}

MnbModel restrict_model(const MnbModel& model, std::span<const FeatureIndex> selected) {
  if (selected.empty()) throw ConfigError("feature selection is empty");
  check_distinct(selected, model.num_features());
  const std::size_t n = model.num_classes();
  const std::size_t k = selected.size();
  std::vector<double> probs(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto theta = model.theta(static_cast<ClassIndex>(i));
    double mass = 0.0;
    for (auto s : selected) mass += theta[s];
    if (!(mass > 0.0))
      throw DegenerateModelError("class '" + model.class_names()[i] + "' has no mass on the selected features");
    for (std::size_t j = 0; j < k; ++j) probs[i * k + j] = theta[selected[j]] / mass;
  }
  return MnbModel(std::move(probs), k, model.priors(), model.class_names(), model.alpha());
}

void save_model(const MnbModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.precision(std::numeric_limits<double>::max_digits10);
  out << model.num_classes() << ' ' << model.num_features() << ' ' << model.alpha() << '\n';
  for (std::size_t i = 0; i < model.num_classes(); ++i) out << (i ? " " : "") << model.priors()[i];
  out << '\n';
  for (std::size_t i = 0; i < model.num_classes(); ++i) {
    const auto theta = model.theta(static_cast<ClassIndex>(i));
    for (std::size_t m = 0; m < theta.size(); ++m) out << (m ? " " : "") << theta[m];
    out << '\n';
  }
  if (!out) throw ConfigError("failed writing " + path.string());
}

MnbModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::istringstream {
    if (!std::getline(in, line)) throw ParseError("unexpected end of model file", line_no + 1);
    ++line_no;
    return std::istringstream(line);
  };

  std::size_t n = 0, m = 0;
  double alpha = 0.0;
  {
    auto ss = next_line();
    if (!(ss >> n >> m >> alpha) || n == 0 || m == 0) throw ParseError("expected header 'N M alpha'", line_no);
  }
  auto read_row = [&](std::size_t count, std::vector<double>& dest) {
    auto ss = next_line();
    for (std::size_t j = 0; j < count; ++j) {
      double v;
      if (!(ss >> v)) throw ParseError("expected " + std::to_string(count) + " values", line_no);
      dest.push_back(v);
    }
    std::string extra;
    if (ss >> extra) throw ParseError("trailing data", line_no);
  };
  std::vector<double> priors;
  read_row(n, priors);
  std::vector<double> probs;
  probs.reserve(n * m);
  for (std::size_t i = 0; i < n; ++i) read_row(m, probs);
  return MnbModel(std::move(probs), m, std::move(priors), {}, alpha);
}

}  // namespace fsmj
