#pragma once

#include <memory>
#include <string>

#include "rholab/grid.hpp"

namespace rholab {

// Strictly positive, finite weight. The pointwise inverse is computed once at
// construction and shared, so w.inverse().inverse() returns bitwise the
// original array; the duality identities in the weight-class reports rely on
// this.
class WeightField {
public:
  explicit WeightField(GridFunction values, std::string descriptor = "");

  const Grid& grid() const { return impl_->values.grid(); }
  const GridFunction& values() const { return inverted_ ? impl_->inv : impl_->values; }
  const GridFunction& inverse_values() const { return inverted_ ? impl_->values : impl_->inv; }
  WeightField inverse() const { return WeightField(impl_, !inverted_); }
  const std::string& descriptor() const { return inverted_ ? impl_->inv_descriptor : impl_->descriptor; }

private:
  struct Impl {
    GridFunction values;
    GridFunction inv;
    std::string descriptor;
    std::string inv_descriptor;
    Impl(GridFunction v, GridFunction i, std::string d)
        : values(std::move(v)), inv(std::move(i)), descriptor(std::move(d)),
          inv_descriptor("inv(" + descriptor + ")") {}
  };
  WeightField(std::shared_ptr<const Impl> impl, bool inverted)
      : impl_(std::move(impl)), inverted_(inverted) {}
  std::shared_ptr<const Impl> impl_;
  bool inverted_ = false;
};

// w(x) = (1 + |x - center|)^a under the minimal-image distance.
WeightField power_weight(const Grid& g, double a, PointIndex center);
inline WeightField power_weight(const Grid& g, double a) {
  return power_weight(g, a, center_index(g));
}

}  // namespace rholab
