#pragma once

// Synthetic data satisfying the eta-Massart noise condition over a
// gamma-margin halfspace, with a white-box noise oracle so structural
// guarantees can be tested directly.

#include <cstdint>
#include <optional>
#include <vector>

#include "massart/random.hpp"
#include "massart/vector_ops.hpp"

namespace massart {

/// Pointwise flip-rate field eta(x). Evaluation is a deterministic function
/// of x (and the salt); the returned rate always lies in [0, eta].
struct NoiseModel {
  enum class Kind {
    Constant,  // eta(x) = rate everywhere (random classification noise)
    Boundary,  // eta(x) = rate where |w*.x| < width, 0 elsewhere
    Hash,      // eta(x) = rate * u(x), u(x) in [0,1) hashed from x and salt
  };

  Kind kind = Kind::Constant;
  double rate = 0.0;
  double width = 0.0;       // Boundary only; must exceed the margin
  std::uint64_t salt = 0;   // Hash only

  static NoiseModel constant(double rate) { return {Kind::Constant, rate, 0.0, 0}; }
  static NoiseModel boundary(double rate, double width) {
    return {Kind::Boundary, rate, width, 0};
  }
  static NoiseModel hash_field(double rate_bound, std::uint64_t salt) {
    return {Kind::Hash, rate_bound, 0.0, salt};
  }
};

/// Which marginal the point generator uses. Both respect the margin exactly.
enum class Marginal {
  ConditionedSphere,  // uniform on the sphere conditioned on |w*.x| >= gamma
  TwoCluster,         // |w*.x| = gamma exactly; stresses the clipping branch
};

/// Ground truth: target halfspace, margin, noise bound, and the noise field.
struct MassartInstance {
  Vec w_star;          // unit vector
  double gamma = 0.0;  // margin, in (0, 1)
  double eta = 0.0;    // Massart bound, in [0, 1/2)
  NoiseModel noise;
  int dim = 0;
  Marginal marginal = Marginal::ConditionedSphere;

  /// Throws std::invalid_argument on any violated field invariant.
  void validate() const;
};

struct LabeledExample {
  Vec x;
  int y = 1;  // exactly +1 or -1
};

struct Dataset {
  std::vector<LabeledExample> examples;
  /// Present only on white-box datasets generated here.
  std::optional<MassartInstance> instance;

  std::size_t size() const { return examples.size(); }
};

/// The exact eta(x) the generator uses; white-box oracle for tests.
double noise_rate_at(const MassartInstance& instance, const Vec& x);

/// w*-coordinate of a uniform sphere point conditioned on |t| >= gamma:
/// density proportional to (1-t^2)^{(d-3)/2} on [-1,-gamma] u [gamma,1].
double sample_margin_coordinate(RandomStream& rng, int dim, double gamma);

/// Uniform on the sphere conditioned on the margin, built from the
/// w*-coordinate plus a uniform direction in the orthogonal complement.
/// The _into form reuses x's storage.
void sample_margin_point_into(Vec& x, const MassartInstance& instance,
                              RandomStream& rng);
Vec sample_margin_point(const MassartInstance& instance, RandomStream& rng);

/// sign(w*.x) flipped with probability eta(x).
int noisy_label(const MassartInstance& instance, const Vec& x,
                RandomStream& rng);

void draw_example_into(LabeledExample& out, const MassartInstance& instance,
                       RandomStream& rng);
LabeledExample draw_example(const MassartInstance& instance, RandomStream& rng);

/// n i.i.d. examples; bitwise deterministic given (instance, seed). The
/// returned dataset carries the instance for white-box tests.
Dataset generate_dataset(const MassartInstance& instance, std::int64_t n,
                         std::uint64_t seed);

/// Random unit vector (uniform on the sphere); used to draw w*.
Vec random_unit_vector(int dim, RandomStream& rng);

/// Uniform in the closed unit ball.
Vec random_ball_vector(int dim, RandomStream& rng);

}  // namespace massart
