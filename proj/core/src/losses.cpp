#include "massart/losses.hpp"

#include <stdexcept>

namespace massart {

namespace {

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 32) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t mid = xs.size() / 2;
  return pairwise_sum(xs.first(mid)) + pairwise_sum(xs.subspan(mid));
}

}  // namespace

void GradientParams::validate() const {
  if (!(leakage >= 0.0 && leakage < 0.5))
    throw std::invalid_argument("gradient params: leakage must lie in [0, 1/2)");
  if (!(clip_floor > 0.0))
    throw std::invalid_argument("gradient params: clip_floor must be positive");
}

double pairwise_mean(std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("pairwise_mean: empty input");
  return pairwise_sum(values) / static_cast<double>(values.size());
}

double leaky_relu(double leakage, double t) {
  if (!(leakage >= 0.0 && leakage < 1.0))
    throw std::invalid_argument("leaky_relu: leakage must lie in [0, 1)");
  return t >= 0.0 ? (1.0 - leakage) * t : leakage * t;
}

double point_loss(double leakage, const Vec& w, const Vec& x, int y) {
  return leaky_relu(leakage, -y * dot(w, x));
}

double clipped_point_loss(const GradientParams& params, const Vec& w,
                          const Vec& v, const Vec& x, int y) {
  return point_loss(params.leakage, w, x, y) *
         clip_weight(dot(v, x), params.clip_floor);
}

Vec massart_gradient(const GradientParams& params, const Vec& w, const Vec& v,
                     const Vec& x, int y) {
  const double coeff =
      gradient_coefficient(params, dot(w, x), dot(v, x), y);
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = coeff * x[i];
  return g;
}

GradientDecomposition decompose_gradient(const GradientParams& params,
                                         const Vec& w, const Vec& x,
                                         const MassartInstance& instance) {
  GradientDecomposition out;
  const double rate = noise_rate_at(instance, x);
  out.mean_label = (1.0 - 2.0 * rate) * sign(dot(instance.w_star, x));
  out.clip = clip_weight(dot(w, x), params.clip_floor);
  const double coeff =
      ((1.0 - 2.0 * params.leakage) * sign(dot(w, x)) - out.mean_label) *
      out.clip;
  out.g1.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.g1[i] = coeff * x[i];
  return out;
}

double conditional_error(const Vec& w, const Vec& x,
                         const MassartInstance& instance) {
  const double rate = noise_rate_at(instance, x);
  return sign(dot(w, x)) == sign(dot(instance.w_star, x)) ? rate : 1.0 - rate;
}

double structural_lemma_gap(const Vec& w, const Dataset& dataset, double eta,
                            double clip_floor) {
  if (!dataset.instance)
    throw std::invalid_argument("structural_lemma_gap: dataset lacks its instance");
  if (dataset.examples.empty())
    throw std::invalid_argument("structural_lemma_gap: empty dataset");
  if (!in_unit_ball(w))
    throw std::invalid_argument("structural_lemma_gap: w outside the unit ball");
  const MassartInstance& inst = *dataset.instance;
  GradientParams params{eta, clip_floor};
  params.validate();

  Vec diff(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) diff[i] = w[i] - inst.w_star[i];

  const std::size_t n = dataset.examples.size();
  std::vector<double> drift_terms(n), errors(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& x = dataset.examples[i].x;
    const double rate = noise_rate_at(inst, x);
    const double mean_label = (1.0 - 2.0 * rate) * sign(dot(inst.w_star, x));
    const double w_dot_x = dot(w, x);
    const double coeff =
        ((1.0 - 2.0 * eta) * sign(w_dot_x) - mean_label) *
        clip_weight(w_dot_x, clip_floor);
    drift_terms[i] = coeff * dot(x, diff);
    errors[i] = sign(w_dot_x) == sign(dot(inst.w_star, x)) ? rate : 1.0 - rate;
  }
  return pairwise_mean(drift_terms) - 2.0 * (pairwise_mean(errors) - eta);
}

}  // namespace massart
