#include "massart/cutting_planes.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace massart {

namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMatrix>;
using ConstMatMap = Eigen::Map<const RowMatrix>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

bool positive_definite(const std::vector<double>& shape, int dim) {
  ConstMatMap s(shape.data(), dim, dim);
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  return llt.info() == Eigen::Success;
}

}  // namespace

Ellipsoid Ellipsoid::unit_ball(int dim) {
  if (dim < 1) throw std::invalid_argument("ellipsoid: dim must be >= 1");
  Ellipsoid e;
  e.dim = dim;
  e.center.assign(dim, 0.0);
  e.shape.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) e.shape[static_cast<std::size_t>(i) * dim + i] = 1.0;
  return e;
}

void Ellipsoid::validate() const {
  if (dim < 1 || static_cast<int>(center.size()) != dim ||
      shape.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("ellipsoid: inconsistent dimensions");
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const double a = shape[static_cast<std::size_t>(i) * dim + j];
      const double b = shape[static_cast<std::size_t>(j) * dim + i];
      if (std::abs(a - b) > 1e-9)
        throw std::invalid_argument("ellipsoid: shape not symmetric");
    }
  if (!positive_definite(shape, dim))
    throw std::invalid_argument("ellipsoid: shape not positive-definite");
}

std::int64_t CpParams::resolved_oracle_samples() const {
  if (oracle_samples) return *oracle_samples;
  const double n = 64.0 * std::log(1.0 / (margin * delta)) /
                   (epsilon * epsilon * margin * margin);
  return static_cast<std::int64_t>(std::ceil(n));
}

std::int64_t CpParams::resolved_max_calls(int dim) const {
  if (max_calls) return *max_calls;
  return static_cast<std::int64_t>(
      std::ceil(8.0 * dim * std::log(4.0 * dim / margin)));
}

std::int64_t CpParams::resolved_check_samples(std::int64_t calls) const {
  if (check_samples) return *check_samples;
  const double n = 8.0 * std::log((static_cast<double>(calls) + 1.0) / delta) /
                   (epsilon * (1.0 - 2.0 * noise_bound));
  return static_cast<std::int64_t>(std::ceil(n));
}

void CpParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("cp params: epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("cp params: delta must lie in (0, 1)");
  if (!(noise_bound >= 0.0 && noise_bound < 0.5))
    throw std::invalid_argument("cp params: eta must lie in [0, 1/2)");
  if (!(margin > 0.0 && margin < 1.0))
    throw std::invalid_argument("cp params: gamma must lie in (0, 1)");
  if (oracle_samples && *oracle_samples < 1)
    throw std::invalid_argument("cp params: oracle sample count must be positive");
  if (check_samples && *check_samples < 1)
    throw std::invalid_argument("cp params: check sample count must be positive");
  if (max_calls && *max_calls < 1)
    throw std::invalid_argument("cp params: call budget must be positive");
}

Vec separation_oracle(const Vec& w, const Dataset& fresh_samples,
                      const CpParams& params) {
  params.validate();
  if (!in_unit_ball(w))
    throw std::invalid_argument("separation_oracle: w outside the unit ball");
  const std::int64_t need = params.resolved_oracle_samples();
  if (static_cast<std::int64_t>(fresh_samples.size()) < need)
    throw std::invalid_argument(
        "separation_oracle: needs " + std::to_string(need) +
        " fresh samples, got " + std::to_string(fresh_samples.size()));
  const GradientParams gp = params.gradient_params();
  Vec sum(w.size(), 0.0);
  for (const auto& ex : fresh_samples.examples) {
    const double wx = dot(w, ex.x);
    const double coeff = gradient_coefficient(gp, wx, wx, ex.y);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += coeff * ex.x[i];
  }
  const double inv = 1.0 / static_cast<double>(fresh_samples.size());
  for (double& c : sum) c *= inv;
  return sum;
}

Vec separation_oracle_stream(const Vec& w, SampleSource& stream,
                             std::int64_t n, const CpParams& params) {
  const GradientParams gp = params.gradient_params();
  Vec sum(w.size(), 0.0);
  LabeledExample ex;
  for (std::int64_t j = 0; j < n; ++j) {
    if (!stream.next_into(ex)) throw insufficient_samples(n - j);
    const double wx = dot(w, ex.x);
    const double coeff = gradient_coefficient(gp, wx, wx, ex.y);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += coeff * ex.x[i];
  }
  const double inv = 1.0 / static_cast<double>(n);
  for (double& c : sum) c *= inv;
  return sum;
}

Ellipsoid ellipsoid_cut(const Ellipsoid& ellipsoid, const Vec& g) {
  const int d = ellipsoid.dim;
  if (static_cast<int>(g.size()) != d)
    throw std::invalid_argument("ellipsoid_cut: direction dimension mismatch");
  bool nonzero = false;
  for (double c : g) nonzero |= (c != 0.0);
  if (!nonzero) throw ellipsoid_breakdown("ellipsoid_cut: zero cut direction");

  Ellipsoid out;
  out.dim = d;

  if (d == 1) {
    // Interval convention: keep the half on the opposite side of g.
    const double half = std::sqrt(ellipsoid.shape[0]);
    out.center = {ellipsoid.center[0] - (g[0] > 0.0 ? 1.0 : -1.0) * half / 2.0};
    out.shape = {ellipsoid.shape[0] / 4.0};
    return out;
  }

  ConstMatMap shape(ellipsoid.shape.data(), d, d);
  ConstVecMap direction(g.data(), d);
  Eigen::VectorXd shape_g = shape * direction;
  const double quad = direction.dot(shape_g);
  if (!(quad > 0.0))
    throw ellipsoid_breakdown("ellipsoid_cut: non-positive quadratic form");
  const Eigen::VectorXd b = shape_g / std::sqrt(quad);  // shape * g-tilde

  const double dd = static_cast<double>(d);
  out.center.resize(d);
  for (int i = 0; i < d; ++i)
    out.center[i] = ellipsoid.center[i] - b[i] / (dd + 1.0);

  const double grow = dd * dd / (dd * dd - 1.0);
  RowMatrix next = grow * (shape - (2.0 / (dd + 1.0)) * (b * b.transpose()));
  next = 0.5 * (next + next.transpose().eval());  // re-symmetrize
  out.shape.assign(next.data(), next.data() + static_cast<std::size_t>(d) * d);
  return out;
}

CpRunResult run_cutting_planes(SampleSource& stream, const CpParams& params,
                               const CpRunOptions& options) {
  params.validate();
  CpRunResult result;

  // The dimension comes from the first drawn sample; it is buffered and
  // replayed as the first draw of the first check.
  LabeledExample ex;
  std::int64_t check_n_guess = params.check_samples ? *params.check_samples : 1;
  if (!stream.next_into(ex)) throw insufficient_samples(check_n_guess);
  const int dim = static_cast<int>(ex.x.size());
  bool buffered = true;

  const std::int64_t call_budget = params.resolved_max_calls(dim);
  const std::int64_t check_n = params.resolved_check_samples(call_budget);
  const std::int64_t oracle_n = params.resolved_oracle_samples();
  const double accept_threshold =
      params.noise_bound + params.epsilon - params.epsilon / 4.0;
  const GradientParams gp = params.gradient_params();

  std::int64_t drawn = 0;
  const auto next = [&](std::int64_t still_needed) -> const LabeledExample& {
    if (!buffered && !stream.next_into(ex))
      throw insufficient_samples(still_needed);
    buffered = false;
    ++drawn;
    return ex;
  };

  const auto check_error = [&](const Vec& w) {
    std::int64_t mistakes = 0;
    for (std::int64_t j = 0; j < check_n; ++j) {
      const LabeledExample& e = next(check_n - j);
      mistakes += sign(dot(w, e.x)) != e.y;
    }
    return static_cast<double>(mistakes) / static_cast<double>(check_n);
  };

  Ellipsoid ellipsoid = Ellipsoid::unit_ball(dim);
  double best_err = 2.0;
  std::int64_t best_index = -1;

  for (;;) {
    Vec w = project_to_ball(ellipsoid.center);
    const double err = check_error(w);
    const std::int64_t candidate_index =
        static_cast<std::int64_t>(result.output.iterates.size());
    result.output.iterates.push_back(w);
    result.output.iterate_indices.push_back(candidate_index);
    result.output.selection_errors.push_back(err);
    if (err < best_err) {
      best_err = err;
      best_index = candidate_index;
    }
    if (err <= accept_threshold) {
      result.reached_target = true;
      result.output.w_hat = std::move(w);
      result.output.selected_index = candidate_index;
      break;
    }
    if (result.oracle_calls >= call_budget) break;

    CpCallRecord rec;
    rec.index = result.oracle_calls;
    rec.holdout_error = err;
    rec.candidate = w;

    Vec direction(dim, 0.0);
    for (std::int64_t j = 0; j < oracle_n; ++j) {
      const LabeledExample& e = next(oracle_n - j);
      const double wx = dot(w, e.x);
      const double coeff = gradient_coefficient(gp, wx, wx, e.y);
      for (int i = 0; i < dim; ++i) direction[i] += coeff * e.x[i];
    }
    for (double& c : direction) c /= static_cast<double>(oracle_n);
    ++result.oracle_calls;
    rec.oracle_norm = l2_norm(direction);

    if (options.w_star) {
      // The kept halfspace passes through the center; the target is dropped
      // when it sits strictly on the discarded side.
      const double side =
          dot(direction, *options.w_star) - dot(direction, ellipsoid.center);
      rec.excluded_w_star = side > 0.0;
      if (rec.excluded_w_star && result.first_cut_excluding_w_star < 0)
        result.first_cut_excluding_w_star = rec.index;
    }
    if (options.record_shapes) rec.shape_before = ellipsoid.shape;

    try {
      ellipsoid = ellipsoid_cut(ellipsoid, direction);
    } catch (const ellipsoid_breakdown&) {
      ellipsoid = Ellipsoid::unit_ball(dim);
      rec.restarted = true;
      ++result.restarts;
    }
    if (options.record_shapes) rec.shape_after = ellipsoid.shape;
    rec.direction = std::move(direction);
    result.calls.push_back(std::move(rec));
  }

  if (!result.reached_target) {
    result.output.w_hat = result.output.iterates[best_index];
    result.output.selected_index = best_index;
  }
  result.output.draws_used = drawn;
  return result;
}

JlProjection JlProjection::gaussian(int in_dim, int out_dim,
                                    std::uint64_t seed) {
  if (in_dim < 1 || out_dim < 1)
    throw std::invalid_argument("jl: dimensions must be positive");
  JlProjection p;
  p.in_dim = in_dim;
  p.out_dim = out_dim;
  p.matrix.resize(static_cast<std::size_t>(in_dim) * out_dim);
  RandomStream rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(out_dim));
  for (double& c : p.matrix) c = scale * rng.normal();
  return p;
}

JlProjection JlProjection::identity(int dim) {
  JlProjection p;
  p.in_dim = dim;
  p.out_dim = dim;
  p.matrix.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i)
    p.matrix[static_cast<std::size_t>(i) * dim + i] = 1.0;
  return p;
}

Vec JlProjection::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != in_dim)
    throw std::invalid_argument("jl: input dimension mismatch");
  Vec out(out_dim);
  ConstMatMap a(matrix.data(), out_dim, in_dim);
  ConstVecMap v(x.data(), in_dim);
  Eigen::Map<Eigen::VectorXd>(out.data(), out_dim) = a * v;
  return out;
}

void JlProjection::apply_unit_into(Vec& out, const Vec& x) const {
  out = apply(x);
  const double n = l2_norm(out);
  if (n > 0.0)
    for (double& c : out) c /= n;
}

Vec JlProjection::apply_unit(const Vec& x) const {
  Vec out;
  apply_unit_into(out, x);
  return out;
}

std::pair<Dataset, JlProjection> jl_project(const Dataset& dataset,
                                            int target_dim,
                                            std::uint64_t seed) {
  if (target_dim < 1)
    throw std::invalid_argument("jl_project: target_dim must be positive");
  if (dataset.examples.empty())
    throw std::invalid_argument("jl_project: empty dataset");
  const int in_dim = static_cast<int>(dataset.examples.front().x.size());
  JlProjection proj = JlProjection::gaussian(in_dim, target_dim, seed);
  return {apply_projection(dataset, proj), std::move(proj)};
}

Dataset apply_projection(const Dataset& dataset, const JlProjection& proj) {
  Dataset out;
  out.examples.reserve(dataset.examples.size());
  for (const auto& ex : dataset.examples)
    out.examples.push_back({proj.apply_unit(ex.x), ex.y});
  return out;
}

}  // namespace massart
