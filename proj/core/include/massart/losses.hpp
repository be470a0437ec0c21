#pragma once

// The reweighted LeakyReLU surrogate loss, its explicit stochastic
// (sub)gradient, and the drift/noise decomposition behind the structural
// lemma. The learners fix leakage to the noise bound and the clipping level
// to half the margin.

#include "massart/data.hpp"
#include "massart/vector_ops.hpp"

namespace massart {

struct GradientParams {
  double leakage = 0.0;     // in [0, 1/2)
  double clip_floor = 0.0;  // positive; gamma/2 in the learners

  void validate() const;
};

/// (1-leakage)*t for t >= 0, leakage*t for t < 0.
double leaky_relu(double leakage, double t);

/// LeakyReLU_leakage(-y (w.x)). Equals (1{y(w.x) <= 0} - leakage)|w.x|.
double point_loss(double leakage, const Vec& w, const Vec& x, int y);

/// point_loss scaled by clip_weight(v.x, floor); convex in w for fixed v.
double clipped_point_loss(const GradientParams& params, const Vec& w,
                          const Vec& v, const Vec& x, int y);

/// Scalar multiplier of x in the stochastic gradient:
/// ((1 - 2 leakage) sign(w.x) - y) * clip_weight(v.x, floor).
inline double gradient_coefficient(const GradientParams& params,
                                   double w_dot_x, double v_dot_x, int y) {
  return ((1.0 - 2.0 * params.leakage) * sign(w_dot_x) - y) *
         clip_weight(v_dot_x, params.clip_floor);
}

/// The explicit gradient the learners descend. Norm is at most
/// 2/clip_floor. Scales the analytic subgradient of clipped_point_loss by
/// exactly 2 on both linear pieces.
Vec massart_gradient(const GradientParams& params, const Vec& w, const Vec& v,
                     const Vec& x, int y);

/// White-box split of the gradient at v = w into a drift part that uses the
/// conditional mean label and a zero-mean noise part:
///   g = g1 + (mean_label - y) * clip * x.
struct GradientDecomposition {
  Vec g1;
  double mean_label = 0.0;  // E[y|x] = (1 - 2 eta(x)) sign(w*.x)
  double clip = 0.0;        // clip_weight(w.x, floor)
};

GradientDecomposition decompose_gradient(const GradientParams& params,
                                         const Vec& w, const Vec& x,
                                         const MassartInstance& instance);

/// eta(x) when sign(w.x) agrees with the target halfspace, 1 - eta(x)
/// otherwise.
double conditional_error(const Vec& w, const Vec& x,
                         const MassartInstance& instance);

/// Sample average of g1.(w - w*) minus 2 (average conditional error - eta).
/// Nonnegative for every sample set whenever eta bounds the noise field and
/// clip_floor <= gamma/2; exposed so tests can probe the gap directly.
double structural_lemma_gap(const Vec& w, const Dataset& dataset, double eta,
                            double clip_floor);

/// Pairwise-summation mean; error growth O(log n).
double pairwise_mean(std::span<const double> values);

}  // namespace massart
