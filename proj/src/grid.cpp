#include "rholab/grid.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "rholab/kernels.hpp"
#include "rholab/parallel.hpp"

namespace rholab {

Grid make_grid(int dim, int n_per_axis, double spacing) {
  if (dim < 1 || dim > 3)
    throw ParameterError("grid dim must be 1, 2 or 3, got " + std::to_string(dim));
  if (n_per_axis < 4)
    throw ParameterError("grid needs at least 4 points per axis, got " +
                         std::to_string(n_per_axis));
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw ParameterError("grid spacing must be positive and finite");
  std::int64_t total = 1;
  for (int i = 0; i < dim; ++i) total *= n_per_axis;
  if (total > (std::int64_t{1} << 30))
    throw ParameterError("grid too large for 32-bit point indexing");
  return Grid{dim, n_per_axis, spacing};
}

std::array<int, 3> coords_of(const Grid& g, PointIndex idx) {
  std::array<int, 3> c{0, 0, 0};
  std::int64_t rem = idx;
  for (int ax = g.dim - 1; ax >= 0; --ax) {
    c[ax] = static_cast<int>(rem % g.n);
    rem /= g.n;
  }
  return c;
}

PointIndex index_of(const Grid& g, const std::array<int, 3>& c) {
  std::int64_t idx = 0;
  for (int ax = 0; ax < g.dim; ++ax) {
    int v = c[ax] % g.n;
    if (v < 0) v += g.n;
    idx = idx * g.n + v;
  }
  return static_cast<PointIndex>(idx);
}

std::int64_t min_image_dist2_int(const Grid& g, PointIndex a, PointIndex b) {
  const auto ca = coords_of(g, a), cb = coords_of(g, b);
  std::int64_t d2 = 0;
  for (int ax = 0; ax < g.dim; ++ax) {
    int d = std::abs(ca[ax] - cb[ax]);
    d = std::min(d, g.n - d);
    d2 += static_cast<std::int64_t>(d) * d;
  }
  return d2;
}

double min_image_distance(const Grid& g, PointIndex a, PointIndex b) {
  return g.h * std::sqrt(static_cast<double>(min_image_dist2_int(g, a, b)));
}

PointIndex center_index(const Grid& g) {
  std::array<int, 3> c{0, 0, 0};
  for (int ax = 0; ax < g.dim; ++ax) c[ax] = g.n / 2;
  return index_of(g, c);
}

double distance_from_center(const Grid& g, PointIndex idx) {
  return min_image_distance(g, idx, center_index(g));
}

GridFunction::GridFunction(const Grid& g, std::vector<double> values)
    : grid_(g), v_(std::move(values)) {
  if (static_cast<std::int64_t>(v_.size()) != g.size())
    throw ParameterError("grid function value count does not match grid size");
  check_finite();
}

void GridFunction::check_finite() const {
  for (double x : v_)
    if (!std::isfinite(x)) throw ParameterError("grid function has a non-finite value");
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw GridMismatchError(std::string(what) + ": grids differ");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid(), "operator+");
  GridFunction r(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid(), "operator-");
  GridFunction r(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

GridFunction operator*(double c, const GridFunction& f) {
  GridFunction r(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = c * f[i];
  return r;
}

GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid(), "pointwise_mul");
  GridFunction r(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

GridFunction abs(const GridFunction& f) {
  GridFunction r(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = std::fabs(f[i]);
  return r;
}

GridFunction pow(const GridFunction& f, double s) {
  GridFunction r(f.grid());
  kernels::pow_scalar_exp(f.data(), s, r.data(), f.size());
  return r;
}

double integral(const GridFunction& f) { return f.grid().cell() * kernels::sum(f.values()); }

double inner(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  return a.grid().cell() * kernels::dot(a.values(), b.values());
}

double sup_norm(const GridFunction& f) { return kernels::max_abs(f.values()); }

RadiusLadder radius_ladder(const Grid& g) {
  RadiusLadder L;
  const double h2 = g.h * g.h;
  // r_j <= n*h/2  <=>  2^j <= n^2/4, exact in integers
  const std::int64_t n2 = static_cast<std::int64_t>(g.n) * g.n;
  for (int j = 0; (std::int64_t{1} << j) * 4 <= n2; ++j) {
    L.radii_sq.push_back(h2 * static_cast<double>(std::int64_t{1} << j));
    L.radii.push_back(g.h * std::sqrt(static_cast<double>(std::int64_t{1} << j)));
  }
  return L;
}

OffsetTable::OffsetTable(const Grid& g) : grid_(g), ladder_(radius_ladder(g)) {
  const int n = g.n;
  const int lo = -((n - 1) / 2), hi = n / 2;
  const std::int64_t cap2_int = (static_cast<std::int64_t>(n) * n) / 4;  // (n/2)^2, n even; floor else
  std::array<int, 3> o{0, 0, 0};
  std::vector<std::pair<std::int64_t, std::array<int, 3>>> tmp;
  auto consider = [&](const std::array<int, 3>& off) {
    std::int64_t d2 = 0;
    for (int ax = 0; ax < g.dim; ++ax) d2 += static_cast<std::int64_t>(off[ax]) * off[ax];
    if (d2 * 4 <= static_cast<std::int64_t>(n) * n) tmp.emplace_back(d2, off);
    (void)cap2_int;
  };
  if (g.dim == 1) {
    for (o[0] = lo; o[0] <= hi; ++o[0]) consider(o);
  } else if (g.dim == 2) {
    for (o[0] = lo; o[0] <= hi; ++o[0])
      for (o[1] = lo; o[1] <= hi; ++o[1]) consider(o);
  } else {
    for (o[0] = lo; o[0] <= hi; ++o[0])
      for (o[1] = lo; o[1] <= hi; ++o[1])
        for (o[2] = lo; o[2] <= hi; ++o[2]) consider(o);
  }
  std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  offsets_.reserve(tmp.size());
  dist2_int_.reserve(tmp.size());
  for (auto& [d2, off] : tmp) {
    dist2_int_.push_back(d2);
    offsets_.push_back(off);
  }
  ladder_prefix_.resize(ladder_.size());
  for (int j = 0; j < ladder_.size(); ++j) ladder_prefix_[j] = prefix_for_r2(ladder_.radii_sq[j]);
  wrap_.resize(3 * n);
  for (int t = 0; t < 3 * n; ++t) wrap_[t] = (t - n + 2 * n) % n;
}

int OffsetTable::prefix_for_r2(double r2) const {
  const double h2 = grid_.h * grid_.h;
  // largest m with h^2 * dist2_int_[m-1] <= r2
  auto it = std::upper_bound(dist2_int_.begin(), dist2_int_.end(), r2,
                             [h2](double r, std::int64_t d2) { return r < h2 * static_cast<double>(d2); });
  return static_cast<int>(it - dist2_int_.begin());
}

void OffsetTable::fill_indices(PointIndex center, int m, PointIndex* out) const {
  const int n = grid_.n;
  const auto c = coords_of(grid_, center);
  const int* wrap = wrap_.data();
  if (grid_.dim == 1) {
    for (int k = 0; k < m; ++k) out[k] = static_cast<PointIndex>(wrap[c[0] + offsets_[k][0] + n]);
  } else if (grid_.dim == 2) {
    for (int k = 0; k < m; ++k) {
      const auto& o = offsets_[k];
      out[k] = static_cast<PointIndex>(wrap[c[0] + o[0] + n] * n + wrap[c[1] + o[1] + n]);
    }
  } else {
    for (int k = 0; k < m; ++k) {
      const auto& o = offsets_[k];
      out[k] = static_cast<PointIndex>((wrap[c[0] + o[0] + n] * n + wrap[c[1] + o[1] + n]) * n +
                                       wrap[c[2] + o[2] + n]);
    }
  }
}

std::shared_ptr<const OffsetTable> offset_table(const Grid& g) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, double>, std::weak_ptr<const OffsetTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(g.dim, g.n, g.h);
  if (auto it = cache.find(key); it != cache.end())
    if (auto sp = it->second.lock()) return sp;
  auto sp = std::make_shared<const OffsetTable>(g);
  cache[key] = sp;
  return sp;
}

Ball ball_at(const Grid& g, PointIndex center, double radius) {
  if (!(radius > 0.0)) throw ParameterError("ball radius must be positive");
  if (radius > g.cap() * (1.0 + 1e-12)) throw RadiusCapError(radius, g.cap());
  if (center < 0 || center >= g.size()) throw ParameterError("ball center out of range");
  auto tab = offset_table(g);
  const int m = tab->prefix_for_r2(radius * radius);
  Ball b;
  b.grid = g;
  b.center = center;
  b.radius = radius;
  b.points.resize(static_cast<std::size_t>(m));
  tab->fill_indices(center, m, b.points.data());
  b.measure = g.cell() * static_cast<double>(m);
  return b;
}

double average_over(const GridFunction& f, const Ball& b) {
  require_same_grid(f.grid(), b.grid, "average_over");
  if (b.points.empty()) throw ParameterError("ball has no points");
  const double s = kernels::gather_sum(f.data(), b.points.data(), b.points.size());
  return s / static_cast<double>(b.points.size());
}

}  // namespace rholab
