#include "fsmj/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fsmj/errors.hpp"

namespace fsmj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPriorSumTolerance = 1e-9;
constexpr double kOvershootTolerance = 1e-9;

void check_distribution(std::span<const double> p, const char* name) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw DomainError(std::string(name) + " has a negative or NaN cell");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance)
    throw DomainError(std::string(name) + " does not sum to 1 (sum = " + std::to_string(sum) + ")");
}

void check_priors(std::span<const double> priors, std::size_t n) {
  if (priors.size() != n) throw DomainError("number of priors differs from number of distributions");
  double sum = 0.0;
  for (double p : priors) {
    if (!(p > 0.0)) throw DomainError("every prior must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kPriorSumTolerance) throw DomainError("priors do not sum to 1");
}

// Unchecked sum_j p_j log(p_j / q_j); +inf on q_j = 0 < p_j.
double kl_unchecked(std::span<const double> p, std::span<const double> q) {
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    if (q[j] == 0.0) return kInf;
    sum += p[j] * std::log(p[j] / q[j]);
  }
  return sum;
}

}  // namespace

double kl(std::span<const double> p, std::span<const double> q, OnInfinite on_infinite) {
  if (p.size() != q.size()) throw DomainError("kl: length mismatch");
  check_distribution(p, "p");
  check_distribution(q, "q");
  const double d = kl_unchecked(p, q);
  if (std::isinf(d) && on_infinite == OnInfinite::kThrow)
    throw DomainError("kl: p is not absolutely continuous with respect to q");
  return d;
}

double jeffreys(std::span<const double> p, std::span<const double> q, OnInfinite on_infinite) {
  return kl(p, q, on_infinite) + kl(q, p, on_infinite);
}

MixtureReference mixture(std::span<const std::vector<double>> distributions, std::span<const double> priors) {
  if (distributions.empty()) throw DomainError("mixture of zero distributions");
  check_priors(priors, distributions.size());
  const std::size_t m = distributions.front().size();
  MixtureReference ref;
  ref.cells.assign(m, 0.0);
  ref.weights.assign(priors.begin(), priors.end());
  for (std::size_t k = 0; k < distributions.size(); ++k) {
    if (distributions[k].size() != m) throw DomainError("distributions differ in length");
    for (std::size_t j = 0; j < m; ++j) ref.cells[j] += priors[k] * distributions[k][j];
  }
  return ref;
}

double js(std::span<const std::vector<double>> distributions, std::span<const double> priors,
          const JsOptions& options) {
  const auto ref = mixture(distributions, priors);
  for (const auto& d : distributions) check_distribution(d, "distribution");

  const std::size_t n = distributions.size();
  if (options.reference == Reference::kMixture) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = options.weighted ? priors[i] : 1.0;
      total += w * kl_unchecked(distributions[i], ref.cells);
    }
    return total;
  }

  if (n < 2) throw DomainError("complement reference needs at least two classes");
  // The divergence separates over cells, so sum the per-cell terms.
  double total = 0.0;
  std::vector<double> column(n);
  for (std::size_t j = 0; j < ref.cells.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = distributions[i][j];
    total += js_cell_term(column, priors, options);
  }
  if (std::isinf(total)) throw DomainError("js: class distribution not dominated by its complement");
  return total;
}

double remainder_mass(double mass) {
  const double r = 1.0 - mass;
  return r < kRemainderFloor ? 0.0 : r;
}

ReducedDistribution reduce(std::span<const double> theta, std::span<const FeatureIndex> selected,
                           FeatureIndex candidate) {
  const std::size_t m = theta.size();
  std::vector<bool> seen(m, false);
  auto mark = [&](FeatureIndex idx) {
    if (idx >= m) throw RangeError("feature index " + std::to_string(idx) + " >= " + std::to_string(m));
    if (seen[idx]) throw RangeError("duplicate feature index " + std::to_string(idx));
    seen[idx] = true;
  };
  for (auto s : selected) mark(s);
  mark(candidate);

  ReducedDistribution out;
  out.cells.reserve(selected.size() + 2);
  double mass = 0.0;
  for (auto s : selected) {
    out.cells.push_back(theta[s]);
    mass += theta[s];
  }
  out.cells.push_back(theta[candidate]);
  mass += theta[candidate];

  if (mass > 1.0 + kOvershootTolerance) {
    for (auto& c : out.cells) c /= mass;
    out.remainder = 0.0;
  } else {
    out.remainder = remainder_mass(mass);
  }
  out.cells.push_back(out.remainder);
  return out;
}

double js_cell_term(std::span<const double> class_values, std::span<const double> priors,
                    const JsOptions& options) {
  const std::size_t n = class_values.size();
  double mix = 0.0;
  for (std::size_t i = 0; i < n; ++i) mix += priors[i] * class_values[i];

  // Complement masses come from prefix and suffix sums over the other classes,
  // never from mix - prior * value, which cancels when the others are tiny.
  thread_local std::vector<double> suffix_mass, suffix_weight;
  if (options.reference == Reference::kComplement) {
    suffix_mass.assign(n + 1, 0.0);
    suffix_weight.assign(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
      suffix_mass[i] = suffix_mass[i + 1] + priors[i] * class_values[i];
      suffix_weight[i] = suffix_weight[i + 1] + priors[i];
    }
  }

  double total = 0.0;
  double prefix_mass = 0.0, prefix_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = class_values[i];
    double ref = mix;
    if (options.reference == Reference::kComplement) {
      ref = (prefix_mass + suffix_mass[i + 1]) / (prefix_weight + suffix_weight[i + 1]);
      prefix_mass += priors[i] * v;
      prefix_weight += priors[i];
    }
    if (v == 0.0) continue;
    if (ref == 0.0) return kInf;
    total += (options.weighted ? priors[i] : 1.0) * v * std::log(v / ref);
  }
  return total;
}

}  // namespace fsmj
