#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops used by the norm, maximal and weight sweeps.
// Every entry point has a scalar reference implementation and an AVX2
// variant; the active lane is picked once at startup from CPUID (override
// with RHOLAB_KERNELS=scalar|avx2). The two lanes are equivalence-tested
// against each other in tests/test_kernels.cpp.
//
// Values may be +-inf (overflowed modular terms); the reductions propagate
// them. log_abs maps 0 to a large negative sentinel so that downstream
// exp(p * (log - log_lambda)) underflows to exactly 0.

namespace rholab::kernels {

enum class Lane { scalar, avx2 };

Lane active_lane();
std::string_view lane_name();
// Test hook. Throws ParameterError if the lane is unsupported on this CPU.
void force_lane(Lane lane);

inline constexpr double kLogZeroSentinel = -1.0e308;

double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double max(const double* x, std::size_t n);      // n >= 1
double min(const double* x, std::size_t n);      // n >= 1
double max_abs(const double* x, std::size_t n);  // 0 for n == 0

// out[i] = log(x[i]) for x[i] > 0, sentinel for x[i] == 0. Requires x >= 0.
void log_abs(const double* x, double* out, std::size_t n);

// out[i] = x[i]^s for x[i] >= 0 (0^s = 0, also for s < 0: +inf).
void pow_scalar_exp(const double* x, double s, double* out, std::size_t n);
// out[i] = x[i]^e[i] for x[i] >= 0.
void pow_field_exp(const double* x, const double* e, double* out, std::size_t n);

// sum_i exp(p[i] * (logs[i] - log_lambda)); the modular of a field whose
// elementwise log-magnitudes are precomputed in logs.
double modular_sum(const double* logs, const double* p, double log_lambda, std::size_t n);

double gather_sum(const double* base, const std::int32_t* idx, std::size_t n);
double gather_max(const double* base, const std::int32_t* idx, std::size_t n);  // n >= 1
double gather_min(const double* base, const std::int32_t* idx, std::size_t n);  // n >= 1

// span conveniences
inline double sum(std::span<const double> x) { return sum(x.data(), x.size()); }
inline double dot(std::span<const double> x, std::span<const double> y) {
  return dot(x.data(), y.data(), x.size());
}
inline double max(std::span<const double> x) { return max(x.data(), x.size()); }
inline double min(std::span<const double> x) { return min(x.data(), x.size()); }
inline double max_abs(std::span<const double> x) { return max_abs(x.data(), x.size()); }

namespace detail {
// Per-lane implementations (exposed for the equivalence tests).
struct Impl {
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*max)(const double*, std::size_t);
  double (*min)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  void (*log_abs)(const double*, double*, std::size_t);
  void (*pow_scalar_exp)(const double*, double, double*, std::size_t);
  void (*pow_field_exp)(const double*, const double*, double*, std::size_t);
  double (*modular_sum)(const double*, const double*, double, std::size_t);
  double (*gather_sum)(const double*, const std::int32_t*, std::size_t);
  double (*gather_max)(const double*, const std::int32_t*, std::size_t);
  double (*gather_min)(const double*, const std::int32_t*, std::size_t);
};
const Impl& scalar_impl();
const Impl& avx2_impl();  // only valid to call through if avx2_supported()
bool avx2_supported();
}  // namespace detail

}  // namespace rholab::kernels
