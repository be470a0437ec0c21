#include "massart/sgd.hpp"

#include <cmath>
#include <stdexcept>

namespace massart {

namespace {

// Holdout flattened coordinate-major: coordinate i of example j lives at
// coords[i * n + j], so scoring a candidate vectorizes across examples.
struct TransposedHoldout {
  std::vector<double> coords;
  std::vector<std::int8_t> labels;
  std::int64_t n = 0;
  int dim = 0;

  void reserve(std::int64_t count, int d) {
    n = 0;
    dim = d;
    coords.assign(static_cast<std::size_t>(count) * d, 0.0);
    labels.assign(count, 0);
  }

  void append(const LabeledExample& ex, std::int64_t capacity) {
    for (int i = 0; i < dim; ++i)
      coords[static_cast<std::size_t>(i) * capacity + n] = ex.x[i];
    labels[n] = static_cast<std::int8_t>(ex.y);
    ++n;
  }

  double error_of(const Vec& w, std::vector<double>& acc) const {
    acc.assign(n, 0.0);
    for (int i = 0; i < dim; ++i) {
      const double wi = w[i];
      const double* row = coords.data() + static_cast<std::size_t>(i) * n;
      for (std::int64_t j = 0; j < n; ++j) acc[j] += wi * row[j];
    }
    std::int64_t mistakes = 0;
    for (std::int64_t j = 0; j < n; ++j)
      mistakes += (acc[j] >= 0.0 ? 1 : -1) != labels[j];
    return static_cast<double>(mistakes) / static_cast<double>(n);
  }
};

}  // namespace

std::int64_t SgdParams::resolved_max_steps() const {
  if (max_steps) return *max_steps;
  const double t = std::log(1.0 / delta) /
                   (step_constant * epsilon * epsilon * margin * margin);
  return static_cast<std::int64_t>(std::ceil(t));
}

std::int64_t SgdParams::resolved_holdout_size() const {
  if (holdout_size) return *holdout_size;
  const double t = static_cast<double>(resolved_max_steps());
  const double n = 8.0 * std::log((t + 1.0) / delta) /
                   (epsilon * (1.0 - 2.0 * noise_bound));
  return static_cast<std::int64_t>(std::ceil(n));
}

void SgdParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("sgd params: epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("sgd params: delta must lie in (0, 1)");
  if (!(noise_bound >= 0.0 && noise_bound < 0.5))
    throw std::invalid_argument("sgd params: eta must lie in [0, 1/2)");
  if (!(margin > 0.0 && margin < 1.0))
    throw std::invalid_argument("sgd params: gamma must lie in (0, 1)");
  // Step-size precondition: c gamma^2 eps <= gamma^2 eps / 8.
  if (!(step_constant > 0.0 && step_constant <= 0.125))
    throw std::invalid_argument("sgd params: step constant must lie in (0, 1/8]");
  if (max_steps && *max_steps < 0)
    throw std::invalid_argument("sgd params: T must be nonnegative");
  if (holdout_size && *holdout_size < 1)
    throw std::invalid_argument("sgd params: holdout size must be positive");
  if (history_stride < 1)
    throw std::invalid_argument("sgd params: history stride must be positive");
}

Vec sgd_step(const Vec& w, const LabeledExample& example,
             const SgdParams& params) {
  params.validate();
  Vec out = w;
  sgd_step_in_place(out, example, params.gradient_params(),
                    params.step_size());
  return out;
}

LearnerOutput run_sgd(SampleSource& stream, const SgdParams& params) {
  params.validate();
  const std::int64_t steps = params.resolved_max_steps();
  const std::int64_t holdout_n = params.resolved_holdout_size();
  const std::int64_t total_draws = steps + holdout_n;
  const double step = params.step_size();
  const GradientParams gp = params.gradient_params();

  // Snapshot for the selection pass; candidates are regenerated instead of
  // materialized.
  auto replay = stream.clone();

  std::int64_t drawn = 0;
  LabeledExample ex;
  const auto draw = [&](SampleSource& src) {
    if (!src.next_into(ex)) throw insufficient_samples(total_draws - drawn);
    ++drawn;
  };

  LearnerOutput out;
  int dim = 0;
  Vec w;
  for (std::int64_t t = 1; t <= steps; ++t) {
    draw(stream);
    if (t == 1) {
      dim = static_cast<int>(ex.x.size());
      w = basis_vector(dim);
      out.iterates.push_back(w);
      out.iterate_indices.push_back(0);
    }
    sgd_step_in_place(w, ex, gp, step);
    if (t % params.history_stride == 0 || t == steps) {
      out.iterates.push_back(w);
      out.iterate_indices.push_back(t);
    }
  }

  TransposedHoldout holdout;
  for (std::int64_t j = 0; j < holdout_n; ++j) {
    draw(stream);
    if (dim == 0) {
      // steps == 0: the dimension comes from the first holdout example.
      dim = static_cast<int>(ex.x.size());
    }
    if (j == 0) holdout.reserve(holdout_n, dim);
    holdout.append(ex, holdout_n);
  }
  if (out.iterates.empty()) {
    out.iterates.push_back(basis_vector(dim));
    out.iterate_indices.push_back(0);
  }

  // Selection pass: regenerate w^0..w^T and score each against the holdout.
  std::vector<double> acc;
  Vec candidate = basis_vector(dim);
  out.selection_errors.reserve(steps + 1);
  double best_err = holdout.error_of(candidate, acc);
  std::int64_t best_index = 0;
  Vec best = candidate;
  out.selection_errors.push_back(best_err);
  for (std::int64_t t = 1; t <= steps; ++t) {
    replay->next_into(ex);
    sgd_step_in_place(candidate, ex, gp, step);
    const double err = holdout.error_of(candidate, acc);
    out.selection_errors.push_back(err);
    if (err < best_err) {
      best_err = err;
      best_index = t;
      best = candidate;
    }
  }

  out.w_hat = std::move(best);
  out.selected_index = best_index;
  out.draws_used = total_draws;
  const bool recorded =
      best_index == 0 || best_index == steps ||
      best_index % params.history_stride == 0;
  if (!recorded) {
    out.iterates.push_back(out.w_hat);
    out.iterate_indices.push_back(best_index);
  }
  return out;
}

double empirical_error(const Vec& w, const Dataset& dataset) {
  if (dataset.examples.empty())
    throw std::invalid_argument("empirical_error: empty dataset");
  std::int64_t mistakes = 0;
  for (const auto& ex : dataset.examples)
    mistakes += sign(dot(w, ex.x)) != ex.y;
  return static_cast<double>(mistakes) /
         static_cast<double>(dataset.examples.size());
}

double streaming_error(const Vec& w, SampleSource& stream, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("streaming_error: n must be >= 1");
  LabeledExample ex;
  std::int64_t mistakes = 0;
  for (std::int64_t j = 0; j < n; ++j) {
    if (!stream.next_into(ex)) throw insufficient_samples(n - j);
    mistakes += sign(dot(w, ex.x)) != ex.y;
  }
  return static_cast<double>(mistakes) / static_cast<double>(n);
}

std::pair<std::size_t, Vec> select_hypothesis(std::span<const Vec> candidates,
                                              const Dataset& holdout) {
  if (candidates.empty())
    throw std::invalid_argument("select_hypothesis: no candidates");
  std::size_t best = 0;
  double best_err = empirical_error(candidates[0], holdout);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double err = empirical_error(candidates[i], holdout);
    if (err < best_err) {
      best_err = err;
      best = i;
    }
  }
  return {best, candidates[best]};
}

std::vector<double> potential_trajectory(std::span<const Vec> iterates,
                                         const Vec& w_star) {
  std::vector<double> phi;
  phi.reserve(iterates.size());
  for (const Vec& w : iterates) phi.push_back(squared_distance(w, w_star));
  return phi;
}

}  // namespace massart
