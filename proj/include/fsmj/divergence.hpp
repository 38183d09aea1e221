#pragma once

// Divergences between categorical (per-trial multinomial) distributions, in
// nats. The multinomial trial count is dropped from the closed forms: it only
// scales every value by the same positive constant, which no argmax notices.
//
// Conventions: 0 * log(0 / q) = 0. q_j = 0 with p_j > 0 is reported as a
// DomainError unless the caller explicitly asks for +infinity.

#include <cstddef>
#include <span>
#include <vector>

#include "fsmj/corpus.hpp"

namespace fsmj {

/// Tolerance on sum(p) - 1 accepted by the divergence entry points.
inline constexpr double kNormalizationTolerance = 1e-6;

enum class OnInfinite { kThrow, kReturnInfinity };

double kl(std::span<const double> p, std::span<const double> q, OnInfinite on_infinite = OnInfinite::kThrow);

/// kl(p, q) + kl(q, p).
double jeffreys(std::span<const double> p, std::span<const double> q,
                OnInfinite on_infinite = OnInfinite::kThrow);

/// Which reference each class distribution is compared against.
///  - kMixture:    P0 = sum_k pi_k P_k, shared by all classes.
///  - kComplement: P_i^c = sum_{k != i} pi_k P_k / (1 - pi_i), one-vs-rest.
enum class Reference { kMixture, kComplement };

struct JsOptions {
  Reference reference = Reference::kMixture;
  /// false: sum_i KL(P_i : ref). true: sum_i pi_i KL(P_i : ref), the classical form.
  bool weighted = false;
};

/// Multi-distribution JS divergence. With the default options this is
/// sum_i KL(P_i : P0); it is finite whenever every prior is positive.
/// Throws DomainError on length mismatches, unnormalized inputs, priors that
/// are non-positive or do not sum to 1, and (complement reference only) on
/// fewer than two classes or an infinite KL term.
double js(std::span<const std::vector<double>> distributions, std::span<const double> priors,
          const JsOptions& options = {});

/// P0 = sum_k pi_k P_k.
struct MixtureReference {
  std::vector<double> cells;
  std::vector<double> weights;
};

MixtureReference mixture(std::span<const std::vector<double>> distributions, std::span<const double> priors);

/// A class distribution coarsened to [theta[s_1], ..., theta[s_K],
/// theta[candidate], remainder], where the remainder groups every other cell.
struct ReducedDistribution {
  std::vector<double> cells;
  double remainder = 0.0;
};

/// Remainders below this are rounding residue of 1 - sum(cells) and count as 0.
inline constexpr double kRemainderFloor = 1e-12;

/// 1 - mass, or 0 when that is below kRemainderFloor.
double remainder_mass(double mass);

/// Builds the reduced cell vector. The remainder is remainder_mass(selected +
/// candidate mass); the cells are renormalized only if they overshoot 1 by
/// more than 1e-9. Throws RangeError on duplicate or out-of-range indices.
ReducedDistribution reduce(std::span<const double> theta, std::span<const FeatureIndex> selected,
                           FeatureIndex candidate);

/// Contribution of a single shared cell to js(): with v_i the cell value of
/// class i, returns sum_i w_i v_i log(v_i / ref_i(v)). js() over any cell set
/// is the sum of these terms, which lets greedy ranking score a candidate in
/// O(N). Returns +infinity on an absolute-continuity violation.
double js_cell_term(std::span<const double> class_values, std::span<const double> priors,
                    const JsOptions& options = {});

}  // namespace fsmj
