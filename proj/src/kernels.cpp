#include "rholab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "rholab/errors.hpp"

namespace rholab::kernels {

namespace detail {
bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
}  // namespace detail

namespace {

struct State {
  const detail::Impl* impl;
  Lane lane;
};

State pick_initial() {
  const char* env = std::getenv("RHOLAB_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0)
    return {&detail::scalar_impl(), Lane::scalar};
  if (env != nullptr && std::strcmp(env, "avx2") == 0) {
    if (!detail::avx2_supported())
      throw ParameterError("RHOLAB_KERNELS=avx2 requested but CPU lacks AVX2/FMA");
    return {&detail::avx2_impl(), Lane::avx2};
  }
  if (detail::avx2_supported()) return {&detail::avx2_impl(), Lane::avx2};
  return {&detail::scalar_impl(), Lane::scalar};
}

State& state() {
  static State s = pick_initial();
  return s;
}

}  // namespace

Lane active_lane() { return state().lane; }

std::string_view lane_name() { return state().lane == Lane::avx2 ? "avx2" : "scalar"; }

void force_lane(Lane lane) {
  if (lane == Lane::avx2 && !detail::avx2_supported())
    throw ParameterError("AVX2 lane not supported on this CPU");
  state() = {lane == Lane::avx2 ? &detail::avx2_impl() : &detail::scalar_impl(), lane};
}

double sum(const double* x, std::size_t n) { return state().impl->sum(x, n); }
double dot(const double* x, const double* y, std::size_t n) { return state().impl->dot(x, y, n); }
double max(const double* x, std::size_t n) { return state().impl->max(x, n); }
double min(const double* x, std::size_t n) { return state().impl->min(x, n); }
double max_abs(const double* x, std::size_t n) { return state().impl->max_abs(x, n); }
void log_abs(const double* x, double* out, std::size_t n) { state().impl->log_abs(x, out, n); }
void pow_scalar_exp(const double* x, double s, double* out, std::size_t n) {
  state().impl->pow_scalar_exp(x, s, out, n);
}
void pow_field_exp(const double* x, const double* e, double* out, std::size_t n) {
  state().impl->pow_field_exp(x, e, out, n);
}
double modular_sum(const double* logs, const double* p, double log_lambda, std::size_t n) {
  return state().impl->modular_sum(logs, p, log_lambda, n);
}
double gather_sum(const double* base, const std::int32_t* idx, std::size_t n) {
  return state().impl->gather_sum(base, idx, n);
}
double gather_max(const double* base, const std::int32_t* idx, std::size_t n) {
  return state().impl->gather_max(base, idx, n);
}
double gather_min(const double* base, const std::int32_t* idx, std::size_t n) {
  return state().impl->gather_min(base, idx, n);
}

}  // namespace rholab::kernels
