#pragma once

// Streaming projected SGD on the reweighted LeakyReLU losses, with constant
// step size, iterate history, and tournament selection over all iterates on
// a fresh holdout.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "massart/losses.hpp"
#include "massart/sample_source.hpp"

namespace massart {

struct SgdParams {
  double epsilon = 0.0;  // target excess error, in (0, 1)
  double delta = 0.0;    // failure probability, in (0, 1)
  double noise_bound = 0.0;  // Massart bound eta, in [0, 1/2); also the leakage
  double margin = 0.0;       // gamma, in (0, 1)

  /// Step-size constant c; the step is c * margin^2 * epsilon. Must stay at
  /// or below 1/8 so the per-step decrease argument applies.
  double step_constant = 1.0 / 16.0;

  /// Update steps T. Default ceil(log(1/delta) / (c epsilon^2 margin^2)).
  std::optional<std::int64_t> max_steps;

  /// Holdout size N for selection. Default
  /// ceil(8 log((T+1)/delta) / (epsilon (1 - 2 eta))).
  std::optional<std::int64_t> holdout_size;

  std::uint64_t seed = 0;
  std::int64_t history_stride = 1;  // record every k-th iterate

  double step_size() const { return step_constant * margin * margin * epsilon; }
  GradientParams gradient_params() const { return {noise_bound, margin / 2.0}; }

  std::int64_t resolved_max_steps() const;
  std::int64_t resolved_holdout_size() const;

  void validate() const;
};

struct LearnerOutput {
  Vec w_hat;
  std::vector<Vec> iterates;             // strided history; contains w_hat
  std::vector<std::int64_t> iterate_indices;
  std::vector<double> selection_errors;  // holdout error of every candidate
  std::int64_t selected_index = 0;
  std::int64_t draws_used = 0;
};

/// One projected update: w <- proj_ball(w - step * g(w, w, x, y)).
Vec sgd_step(const Vec& w, const LabeledExample& example,
             const SgdParams& params);

inline void sgd_step_in_place(Vec& w, const LabeledExample& example,
                              const GradientParams& gp, double step) {
  const double wx = dot(w, example.x);
  const double scale = step * gradient_coefficient(gp, wx, wx, example.y);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= scale * example.x[i];
  project_to_ball_in_place(w);
}

/// The full learner: T steps from w^0 = e1 (one fresh draw per step), then a
/// fresh holdout of N draws, returning the candidate w^0..w^T with the
/// smallest holdout error (earliest index on ties). Consumes exactly
/// T + N draws; throws insufficient_samples with the outstanding count if
/// the stream runs dry.
LearnerOutput run_sgd(SampleSource& stream, const SgdParams& params);

/// Fraction of examples with sign(w.x) != y.
double empirical_error(const Vec& w, const Dataset& dataset);

/// Same error measured over n fresh draws from a stream.
double streaming_error(const Vec& w, SampleSource& stream, std::int64_t n);

/// Argmin of empirical_error over the candidates; ties break to the lowest
/// index.
std::pair<std::size_t, Vec> select_hypothesis(std::span<const Vec> candidates,
                                              const Dataset& holdout);

/// ||w_t - w*||^2 per recorded iterate; white-box convergence diagnostic.
std::vector<double> potential_trajectory(std::span<const Vec> iterates,
                                         const Vec& w_star);

}  // namespace massart
