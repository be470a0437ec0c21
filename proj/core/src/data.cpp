#include "massart/data.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace massart {

namespace {

// b^{k/2} for integer k >= 0, via squaring plus one sqrt for odd k.
double half_power(double b, int k) {
  double r = 1.0;
  double base = b;
  for (int m = k / 2; m > 0; m >>= 1) {
    if (m & 1) r *= base;
    base *= base;
  }
  if (k & 1) r *= std::sqrt(b);
  return r;
}

}  // namespace

void MassartInstance::validate() const {
  if (dim < 2) throw std::invalid_argument("instance: dim must be >= 2");
  if (static_cast<int>(w_star.size()) != dim)
    throw std::invalid_argument("instance: w_star length != dim");
  if (!is_unit(w_star))
    throw std::invalid_argument("instance: w_star must be a unit vector");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("instance: gamma must lie in (0, 1)");
  if (!(eta >= 0.0 && eta < 0.5))
    throw std::invalid_argument("instance: eta must lie in [0, 1/2)");
  if (!(noise.rate >= 0.0 && noise.rate <= eta))
    throw std::invalid_argument("instance: noise rate must lie in [0, eta]");
  if (noise.kind == NoiseModel::Kind::Boundary && !(noise.width > gamma))
    throw std::invalid_argument("instance: boundary width must exceed gamma");
}

double noise_rate_at(const MassartInstance& instance, const Vec& x) {
  switch (instance.noise.kind) {
    case NoiseModel::Kind::Constant:
      return instance.noise.rate;
    case NoiseModel::Kind::Boundary:
      return std::abs(dot(instance.w_star, x)) < instance.noise.width
                 ? instance.noise.rate
                 : 0.0;
    case NoiseModel::Kind::Hash: {
      std::uint64_t h = mix64(instance.noise.salt ^ kGolden);
      for (double c : x) h = mix64(h ^ std::bit_cast<std::uint64_t>(c));
      return instance.noise.rate *
             (static_cast<double>(h >> 11) * 0x1.0p-53);
    }
  }
  throw std::logic_error("noise_rate_at: unknown noise kind");
}

double sample_margin_coordinate(RandomStream& rng, int dim, double gamma) {
  if (dim < 2) throw std::invalid_argument("margin coordinate: dim must be >= 2");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("margin coordinate: gamma must lie in [0, 1)");
  const double s = rng.coin() ? 1.0 : -1.0;
  if (dim == 2) {
    // Here the coordinate is the cosine of a uniform angle; conditioning on
    // |t| >= gamma restricts the angle to [0, acos(gamma)).
    return s * std::cos(rng.uniform01() * std::acos(gamma));
  }
  if (dim == 3) {
    // Flat marginal: t is uniform.
    return s * rng.uniform(gamma, 1.0);
  }
  // The density (1-t^2)^{k/2}, k = d-3, is decreasing on [gamma, 1]; sample
  // by rejection under the constant envelope at t = gamma.
  const int k = dim - 3;
  const double fmax = half_power(1.0 - gamma * gamma, k);
  for (;;) {
    const double t = rng.uniform(gamma, 1.0);
    if (rng.uniform01() * fmax <= half_power(1.0 - t * t, k)) return s * t;
  }
}

void sample_margin_point_into(Vec& x, const MassartInstance& instance,
                              RandomStream& rng) {
  if (!(instance.gamma < 1.0))
    throw std::invalid_argument("sample_margin_point: empty support (gamma >= 1)");
  const int d = instance.dim;
  const Vec& w = instance.w_star;

  double t;
  if (instance.marginal == Marginal::TwoCluster) {
    t = (rng.coin() ? 1.0 : -1.0) * instance.gamma;
  } else {
    t = sample_margin_coordinate(rng, d, instance.gamma);
  }

  // Uniform direction in the orthogonal complement of w*, scaled so the
  // assembled point is unit length: x = t w* + sqrt(1-t^2) u.
  x.resize(d);
  for (;;) {
    for (int i = 0; i < d; ++i) x[i] = rng.normal();
    const double along = dot(x, w);
    for (int i = 0; i < d; ++i) x[i] -= along * w[i];
    const double n = l2_norm(x);
    if (n > 1e-12) {
      const double scale = std::sqrt(std::max(0.0, 1.0 - t * t)) / n;
      for (int i = 0; i < d; ++i) x[i] = t * w[i] + scale * x[i];
      return;
    }
  }
}

Vec sample_margin_point(const MassartInstance& instance, RandomStream& rng) {
  Vec x;
  sample_margin_point_into(x, instance, rng);
  return x;
}

int noisy_label(const MassartInstance& instance, const Vec& x,
                RandomStream& rng) {
  const int truth = sign(dot(instance.w_star, x));
  return rng.uniform01() < noise_rate_at(instance, x) ? -truth : truth;
}

void draw_example_into(LabeledExample& out, const MassartInstance& instance,
                       RandomStream& rng) {
  sample_margin_point_into(out.x, instance, rng);
  out.y = noisy_label(instance, out.x, rng);
}

LabeledExample draw_example(const MassartInstance& instance,
                            RandomStream& rng) {
  LabeledExample ex;
  draw_example_into(ex, instance, rng);
  return ex;
}

Dataset generate_dataset(const MassartInstance& instance, std::int64_t n,
                         std::uint64_t seed) {
  instance.validate();
  if (n < 1) throw std::invalid_argument("generate_dataset: n must be >= 1");
  RandomStream rng(seed);
  Dataset ds;
  ds.instance = instance;
  ds.examples.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) ds.examples.push_back(draw_example(instance, rng));
  return ds;
}

Vec random_unit_vector(int dim, RandomStream& rng) {
  if (dim < 1) throw std::invalid_argument("random_unit_vector: dim must be >= 1");
  Vec v(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
    const double n = l2_norm(v);
    if (n > 1e-12) {
      for (int i = 0; i < dim; ++i) v[i] /= n;
      return v;
    }
  }
}

Vec random_ball_vector(int dim, RandomStream& rng) {
  Vec v = random_unit_vector(dim, rng);
  const double r = std::pow(rng.uniform01(), 1.0 / dim);
  for (double& c : v) c *= r;
  return v;
}

}  // namespace massart
