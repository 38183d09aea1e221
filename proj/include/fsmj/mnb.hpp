#pragma once

// Multinomial naive Bayes: parameter estimation with additive smoothing and
// MAP classification over sparse term counts.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fsmj/corpus.hpp"

namespace fsmj {

/// Per-class cell probabilities theta_i over M terms plus class priors.
/// Immutable once built; safe to share across threads.
class MnbModel {
 public:
  MnbModel() = default;

  /// Takes a row-major N x M probability matrix. Throws ConfigError if a row
  /// does not sum to 1 within 1e-9, if priors do not sum to 1 within 1e-12,
  /// or if any prior is non-positive. Zero cells are allowed but make the
  /// model degenerate for classification of documents containing them.
  MnbModel(std::vector<double> cell_probs, std::size_t num_features, std::vector<double> priors,
           std::vector<std::string> class_names, double alpha = 0.0);

  std::size_t num_classes() const noexcept { return priors_.size(); }
  std::size_t num_features() const noexcept { return num_features_; }
  double alpha() const noexcept { return alpha_; }

  std::span<const double> theta(ClassIndex i) const {
    return {cell_probs_.data() + static_cast<std::size_t>(i) * num_features_, num_features_};
  }
  std::span<const double> log_theta(ClassIndex i) const {
    return {log_cell_probs_.data() + static_cast<std::size_t>(i) * num_features_, num_features_};
  }
  double cell_prob(ClassIndex i, FeatureIndex m) const { return theta(i)[m]; }
  const std::vector<double>& priors() const noexcept { return priors_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }

 private:
  std::vector<double> cell_probs_;
  std::vector<double> log_cell_probs_;
  std::vector<double> priors_;
  std::vector<std::string> class_names_;
  std::size_t num_features_ = 0;
  double alpha_ = 0.0;
};

struct Classification {
  ClassIndex label = 0;
  std::vector<double> log_scores;
};

/// p_im = (alpha + n_im) / (alpha * M + n_i), prior_i = docs_i / |D|.
/// Throws DegenerateModelError when alpha = 0 and some class has a zero
/// term count (or no tokens at all), ConfigError when alpha < 0.
MnbModel estimate_params(const LabeledCorpus& corpus, double alpha = 1.0);

/// MAP rule: argmax_i sum_m x_m log p_im + log prior_i, ties to the lowest
/// class index. Only the document's nonzero entries are visited, so an empty
/// document falls back to the largest prior.
Classification classify(const MnbModel& model, const SparseDocument& doc);

/// Renormalizes every theta_i over `selected` (in that order); priors unchanged.
/// Throws RangeError on out-of-range or duplicate indices, ConfigError on an
/// empty selection, DegenerateModelError when a class has no mass on it.
MnbModel restrict_model(const MnbModel& model, std::span<const FeatureIndex> selected);

/// Plain-text model file: a header line `N M alpha`, a line of N priors, then
/// N lines of M probabilities, all in round-trippable decimal.
void save_model(const MnbModel& model, const std::filesystem::path& path);
MnbModel load_model(const std::filesystem::path& path);

}  // namespace fsmj
