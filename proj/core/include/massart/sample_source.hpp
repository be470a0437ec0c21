#pragma once

// One-way streams of labeled examples feeding the learners. clone() takes a
// snapshot of the current position so a consumed prefix can be replayed
// deterministically (the SGD learner re-derives its iterates this way
// instead of materializing them).

#include <memory>
#include <optional>
#include <vector>

#include "massart/data.hpp"
#include "massart/errors.hpp"

namespace massart {

class SampleSource {
 public:
  virtual ~SampleSource() = default;

  /// Fills out with the next example, reusing its storage. Returns false
  /// when the source is exhausted.
  virtual bool next_into(LabeledExample& out) = 0;

  virtual std::unique_ptr<SampleSource> clone() const = 0;

  std::optional<LabeledExample> next() {
    LabeledExample ex;
    if (!next_into(ex)) return std::nullopt;
    return ex;
  }
};

/// Endless i.i.d. draws from a Massart instance.
class GeneratorSource final : public SampleSource {
 public:
  GeneratorSource(MassartInstance instance, std::uint64_t seed)
      : instance_(std::move(instance)), rng_(seed) {
    instance_.validate();
  }

  bool next_into(LabeledExample& out) override {
    draw_example_into(out, instance_, rng_);
    return true;
  }

  std::unique_ptr<SampleSource> clone() const override {
    return std::make_unique<GeneratorSource>(*this);
  }

  const MassartInstance& instance() const { return instance_; }

 private:
  MassartInstance instance_;
  RandomStream rng_;
};

/// Fixed examples replayed in order; backs file-based training.
class VectorSource final : public SampleSource {
 public:
  explicit VectorSource(std::vector<LabeledExample> items)
      : items_(std::make_shared<const std::vector<LabeledExample>>(
            std::move(items))) {}

  explicit VectorSource(
      std::shared_ptr<const std::vector<LabeledExample>> items,
      std::size_t position = 0)
      : items_(std::move(items)), position_(position) {}

  bool next_into(LabeledExample& out) override {
    if (position_ >= items_->size()) return false;
    out = (*items_)[position_++];
    return true;
  }

  std::unique_ptr<SampleSource> clone() const override {
    return std::make_unique<VectorSource>(items_, position_);
  }

 private:
  std::shared_ptr<const std::vector<LabeledExample>> items_;
  std::size_t position_ = 0;
};

}  // namespace massart
