#include "rholab/kernels.hpp"

#include <cmath>

namespace rholab::kernels::detail {
namespace {

double s_sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double s_dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double s_max(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

double s_min(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = x[i] < m ? x[i] : m;
  return m;
}

double s_max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(x[i]);
    m = a > m ? a : m;
  }
  return m;
}

void s_log_abs(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = x[i] > 0.0 ? std::log(x[i]) : kLogZeroSentinel;
}

void s_pow_scalar_exp(const double* x, double s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = x[i] > 0.0 ? std::exp(s * std::log(x[i])) : (s >= 0.0 ? 0.0 : HUGE_VAL);
}

void s_pow_field_exp(const double* x, const double* e, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = x[i] > 0.0 ? std::exp(e[i] * std::log(x[i])) : (e[i] >= 0.0 ? 0.0 : HUGE_VAL);
}

double s_modular_sum(const double* logs, const double* p, double log_lambda, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(p[i] * (logs[i] - log_lambda));
  return s;
}

double s_gather_sum(const double* base, const std::int32_t* idx, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += base[idx[i]];
  return s;
}

double s_gather_max(const double* base, const std::int32_t* idx, std::size_t n) {
  double m = base[idx[0]];
  for (std::size_t i = 1; i < n; ++i) {
    const double v = base[idx[i]];
    m = v > m ? v : m;
  }
  return m;
}

double s_gather_min(const double* base, const std::int32_t* idx, std::size_t n) {
  double m = base[idx[0]];
  for (std::size_t i = 1; i < n; ++i) {
    const double v = base[idx[i]];
    m = v < m ? v : m;
  }
  return m;
}

}  // namespace

const Impl& scalar_impl() {
  static const Impl impl = {s_sum,         s_dot,           s_max,
                            s_min,         s_max_abs,       s_log_abs,
                            s_pow_scalar_exp, s_pow_field_exp, s_modular_sum,
                            s_gather_sum,  s_gather_max,    s_gather_min};
  return impl;
}

}  // namespace rholab::kernels::detail
