#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rholab/errors.hpp"

namespace rholab {

// Periodic lattice (torus) with n points per axis and spacing h. All distances
// use the minimal-image convention; point enumeration is row-major over axes.
struct Grid {
  int dim = 3;
  int n = 4;
  double h = 1.0;

  std::int64_t size() const {
    std::int64_t s = 1;
    for (int i = 0; i < dim; ++i) s *= n;
    return s;
  }
  double side() const { return n * h; }
  double cap() const { return 0.5 * n * h; }  // largest radius that is still a metric ball
  double cell() const {
    double c = 1.0;
    for (int i = 0; i < dim; ++i) c *= h;
    return c;  // h^d
  }
  double measure() const { return cell() * static_cast<double>(size()); }

  bool operator==(const Grid&) const = default;
};

Grid make_grid(int dim, int n_per_axis, double spacing);

using PointIndex = std::int32_t;

std::array<int, 3> coords_of(const Grid& g, PointIndex idx);
PointIndex index_of(const Grid& g, const std::array<int, 3>& c);  // coords may be out of range; wrapped

// squared minimal-image separation in lattice units (multiply by h^2 for physical)
std::int64_t min_image_dist2_int(const Grid& g, PointIndex a, PointIndex b);
double min_image_distance(const Grid& g, PointIndex a, PointIndex b);
PointIndex center_index(const Grid& g);  // the point with coords (n/2, ..., n/2)
// distance from the domain center point
double distance_from_center(const Grid& g, PointIndex idx);

// Scalar field on a grid. Values are finite by construction; the integral
// convention is h^d * sum(values) project-wide.
class GridFunction {
public:
  explicit GridFunction(const Grid& g, double fill = 0.0)
      : grid_(g), v_(static_cast<std::size_t>(g.size()), fill) {}
  GridFunction(const Grid& g, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }
  const double* data() const { return v_.data(); }
  double* data() { return v_.data(); }
  std::span<const double> values() const { return v_; }
  std::vector<double>& mutable_values() { return v_; }

  template <class Fn>  // fn(std::array<int,3> coords) -> double
  static GridFunction from_fn(const Grid& g, Fn&& fn) {
    GridFunction f(g);
    for (std::int64_t i = 0; i < g.size(); ++i)
      f.v_[static_cast<std::size_t>(i)] = fn(coords_of(g, static_cast<PointIndex>(i)));
    return f;
  }

  void check_finite() const;  // throws ParameterError on non-finite entries

private:
  Grid grid_;
  std::vector<double> v_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* what);

// pointwise algebra
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& f);
GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b);
GridFunction abs(const GridFunction& f);
GridFunction pow(const GridFunction& f, double s);  // |f|^s semantics, f >= 0 expected

double integral(const GridFunction& f);              // h^d * sum
double inner(const GridFunction& a, const GridFunction& b);  // h^d * sum a*b
double sup_norm(const GridFunction& f);

// Euclidean ball as an explicit point set under the minimal-image metric.
struct Ball {
  Grid grid;
  PointIndex center = 0;
  double radius = 0.0;
  std::vector<PointIndex> points;  // deterministic order: |offset|^2 ascending, then lexicographic
  double measure = 0.0;            // h^d * points.size()
};

Ball ball_at(const Grid& g, PointIndex center, double radius);
double average_over(const GridFunction& f, const Ball& b);

// Geometric radius ladder r_j = h * 2^{j/2}, j = 0..jmax, r_j <= cap.
// radii_sq holds the exact h^2 * 2^j values used for membership tests.
struct RadiusLadder {
  std::vector<double> radii;
  std::vector<double> radii_sq;
  int size() const { return static_cast<int>(radii.size()); }
};

RadiusLadder radius_ladder(const Grid& g);

// All lattice offsets within the radius cap, sorted by squared length then
// lexicographically. Shared by every ball sweep; ball point sets for ladder
// radius j are the prefix [0, ladder_prefix[j]).
class OffsetTable {
public:
  explicit OffsetTable(const Grid& g);

  const Grid& grid() const { return grid_; }
  const RadiusLadder& ladder() const { return ladder_; }
  int count() const { return static_cast<int>(dist2_int_.size()); }
  std::span<const std::int64_t> dist2_int() const { return dist2_int_; }
  std::span<const int> ladder_prefix() const { return ladder_prefix_; }

  // number of offsets with h^2*|o|^2 <= r2
  int prefix_for_r2(double r2) const;

  // flat indices of {center + offsets[0..m)} written to out (size m)
  void fill_indices(PointIndex center, int m, PointIndex* out) const;

private:
  Grid grid_;
  RadiusLadder ladder_;
  std::vector<std::array<int, 3>> offsets_;
  std::vector<std::int64_t> dist2_int_;
  std::vector<int> ladder_prefix_;
  std::vector<int> wrap_;  // size 3n, wrap_[t] = (t - n) mod n
};

// shared, lazily built per grid signature
std::shared_ptr<const OffsetTable> offset_table(const Grid& g);

inline constexpr double unit_ball_volume(int d) {
  return d == 1 ? 2.0 : d == 2 ? 3.14159265358979323846 : 4.18879020478639098462;
}

}  // namespace rholab
