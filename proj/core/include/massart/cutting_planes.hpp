#pragma once

// Cutting-plane learner: the gradient-averaging separation oracle driving an
// ellipsoid method over the unit ball, plus optional Johnson-Lindenstrauss
// preprocessing. The target set is the ball of radius gamma/2 around w*.

#include <cstdint>
#include <memory>
#include <optional>

#include "massart/sgd.hpp"

namespace massart {

/// Search state {u : (u - center)^T shape^{-1} (u - center) <= 1}.
struct Ellipsoid {
  Vec center;
  std::vector<double> shape;  // d x d symmetric positive-definite, row-major
  int dim = 0;

  static Ellipsoid unit_ball(int dim);

  /// Throws std::invalid_argument unless shape is symmetric (1e-9) and has
  /// a positive-pivot Cholesky factorization.
  void validate() const;
};

struct CpParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double noise_bound = 0.0;  // eta
  double margin = 0.0;       // gamma

  /// Fresh samples per oracle call N. Default
  /// ceil(64 log(1/(gamma delta)) / (epsilon^2 gamma^2)).
  std::optional<std::int64_t> oracle_samples;

  /// Holdout per termination test. Default
  /// ceil(8 log((max_calls+1)/delta) / (epsilon (1 - 2 eta))).
  std::optional<std::int64_t> check_samples;

  /// Oracle-call budget. Default ceil(8 d log(4 d / gamma)); sized for the
  /// ellipsoid update, not the idealized O(d log(Rd/r)) bound.
  std::optional<std::int64_t> max_calls;

  std::uint64_t seed = 0;

  GradientParams gradient_params() const { return {noise_bound, margin / 2.0}; }

  std::int64_t resolved_oracle_samples() const;
  std::int64_t resolved_max_calls(int dim) const;
  std::int64_t resolved_check_samples(std::int64_t max_calls) const;

  void validate() const;
};

/// Average of the explicit gradient (v = w) over the provided samples. When
/// err_D(w) >= eta + epsilon this is a separating direction for the target
/// ball with the proposition's probability.
Vec separation_oracle(const Vec& w, const Dataset& fresh_samples,
                      const CpParams& params);

/// Streaming form: consumes exactly n draws.
Vec separation_oracle_stream(const Vec& w, SampleSource& stream,
                             std::int64_t n, const CpParams& params);

/// Minimum-volume ellipsoid containing E intersected with the kept halfspace
/// {u : g.(u - center) <= 0} (central cut). Volume shrinks by a factor
/// depending only on the dimension. Throws ellipsoid_breakdown when g = 0 or
/// the quadratic form g^T shape g is not positive.
Ellipsoid ellipsoid_cut(const Ellipsoid& ellipsoid, const Vec& g);

struct CpCallRecord {
  std::int64_t index = 0;       // 0-based oracle call number
  double holdout_error = 0.0;   // error that triggered this cut
  double oracle_norm = 0.0;
  bool restarted = false;       // cut failed; search restarted from the ball
  bool excluded_w_star = false; // white-box: cut dropped the target
  Vec candidate;
  Vec direction;
  std::vector<double> shape_before;  // filled when record_shapes is set
  std::vector<double> shape_after;
};

struct CpRunOptions {
  const Vec* w_star = nullptr;  // enables white-box cut diagnostics
  bool record_shapes = false;
};

struct CpRunResult {
  LearnerOutput output;          // iterates = visited candidates
  bool reached_target = false;   // holdout rule fired before the budget
  std::int64_t oracle_calls = 0;
  std::int64_t restarts = 0;
  std::int64_t first_cut_excluding_w_star = -1;  // -1: never (white-box)
  std::vector<CpCallRecord> calls;
};

/// Loop: candidate = project_to_ball(center); accept when its error on
/// check_samples fresh draws is at most eta + 3 epsilon / 4; otherwise cut
/// with the oracle direction. After the call budget, the final center gets
/// one last check and the best-scoring visited candidate is returned.
CpRunResult run_cutting_planes(SampleSource& stream, const CpParams& params,
                               const CpRunOptions& options = {});

/// Dense Gaussian sketch, entries N(0, 1/out_dim).
struct JlProjection {
  int in_dim = 0;
  int out_dim = 0;
  std::vector<double> matrix;  // out_dim x in_dim, row-major

  static JlProjection gaussian(int in_dim, int out_dim, std::uint64_t seed);
  static JlProjection identity(int dim);

  Vec apply(const Vec& x) const;
  /// A x renormalized to the unit sphere; the lifted classifier is
  /// sign(w . apply_unit(x)).
  Vec apply_unit(const Vec& x) const;
  void apply_unit_into(Vec& out, const Vec& x) const;
};

/// Projects every point (renormalized, labels unchanged) and returns the
/// handle needed to lift a learned weight vector back.
std::pair<Dataset, JlProjection> jl_project(const Dataset& dataset,
                                            int target_dim,
                                            std::uint64_t seed);

/// Identity/test-hook form: apply an existing projection to a dataset.
Dataset apply_projection(const Dataset& dataset, const JlProjection& proj);

/// Stream decorator applying a projection to each drawn example.
class ProjectedSource final : public SampleSource {
 public:
  ProjectedSource(std::unique_ptr<SampleSource> inner, JlProjection projection)
      : inner_(std::move(inner)), projection_(std::move(projection)) {}

  bool next_into(LabeledExample& out) override {
    if (!inner_->next_into(buffer_)) return false;
    projection_.apply_unit_into(out.x, buffer_.x);
    out.y = buffer_.y;
    return true;
  }

  std::unique_ptr<SampleSource> clone() const override {
    return std::make_unique<ProjectedSource>(inner_->clone(), projection_);
  }

 private:
  std::unique_ptr<SampleSource> inner_;
  JlProjection projection_;
  LabeledExample buffer_;
};

}  // namespace massart
