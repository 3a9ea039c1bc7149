// AVX2 + FMA lane. Compiled with -mavx2 -mfma (see CMakeLists); nothing in
// here may be called unless detail::avx2_supported() returned true.
//
// exp/log are the Cephes rational approximations, 4 lanes wide. Observed
// accuracy is within a few ulp of libm; the cross-lane equivalence tests pin
// this down.

#include "rholab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <cmath>

namespace rholab::kernels::detail {
namespace {

inline __m256d poly3(__m256d x, double c0, double c1, double c2) {
  __m256d r = _mm256_set1_pd(c0);
  r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c1));
  r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c2));
  return r;
}

// exact for |v| < 2^51
inline __m256d small_int64_to_double(__m256i v) {
  const __m256i magic = _mm256_set1_epi64x(0x4338000000000000LL);  // 2^52 + 2^51
  const __m256d shifted = _mm256_castsi256_pd(_mm256_add_epi64(v, magic));
  return _mm256_sub_pd(shifted, _mm256_set1_pd(6755399441055744.0));
}

// e^x, |error| <~ 2 ulp. Handles +-inf and out-of-range inputs.
inline __m256d exp4(__m256d x) {
  const __m256d max_x = _mm256_set1_pd(709.782712893383996732);
  const __m256d min_x = _mm256_set1_pd(-745.133219101941108420);
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);

  const __m256d too_big = _mm256_cmp_pd(x, max_x, _CMP_GT_OQ);
  const __m256d too_small = _mm256_cmp_pd(x, min_x, _CMP_LT_OQ);
  // clamp so the core path stays finite
  __m256d xc = _mm256_min_pd(_mm256_max_pd(x, min_x), max_x);

  __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  xc = _mm256_fnmadd_pd(n, c1, xc);
  xc = _mm256_fnmadd_pd(n, c2, xc);

  const __m256d xx = _mm256_mul_pd(xc, xc);
  __m256d px = poly3(xx, 1.26177193074810590878e-4, 3.02994407707441961300e-2,
                     9.99999999999999999910e-1);
  px = _mm256_mul_pd(px, xc);
  __m256d qx = _mm256_set1_pd(3.00198505138664455042e-6);
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.52448340349684104192e-3));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.27265548208155028766e-1));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.00000000000000000005e0));
  __m256d r = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, _mm256_set1_pd(1.0));

  // scale by 2^n in two halves so the exponent field never saturates
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m128i n32_half = _mm_srai_epi32(n32, 1);  // floor(n/2)
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i n1 = _mm256_cvtepi32_epi64(n32_half);
  const __m256i n2 = _mm256_sub_epi64(n64, n1);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256d s1 =
      _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(n1, bias), 52));
  const __m256d s2 =
      _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(n2, bias), 52));
  r = _mm256_mul_pd(_mm256_mul_pd(r, s1), s2);

  r = _mm256_blendv_pd(r, _mm256_set1_pd(HUGE_VAL), too_big);
  r = _mm256_blendv_pd(r, _mm256_setzero_pd(), too_small);
  return r;
}

// ln(x) for x > 0 finite normal; callers mask zeros/denormals beforehand.
inline __m256d log4(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_field =
      _mm256_srli_epi64(_mm256_and_si256(bits, _mm256_set1_epi64x(0x7FF0000000000000LL)), 52);
  // e = exponent - 1022  (frexp convention, mantissa in [0.5, 1))
  __m256d e = _mm256_sub_pd(small_int64_to_double(exp_field), _mm256_set1_pd(1022.0));
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FE0000000000000LL)));

  const __m256d sqrth = _mm256_set1_pd(0.70710678118654752440);
  const __m256d below = _mm256_cmp_pd(m, sqrth, _CMP_LT_OQ);
  m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), below);
  e = _mm256_blendv_pd(e, _mm256_sub_pd(e, _mm256_set1_pd(1.0)), below);
  m = _mm256_sub_pd(m, _mm256_set1_pd(1.0));

  const __m256d z = _mm256_mul_pd(m, m);
  __m256d p = _mm256_set1_pd(1.01875663804580931796e-4);
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(4.97494994976747001425e-1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(4.70579119878881725854e0));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(1.44989225341610930846e1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(1.79368678507819816313e1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(7.70838733755885391666e0));
  __m256d q = _mm256_add_pd(m, _mm256_set1_pd(1.12873587189167450590e1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(4.52279145837532221105e1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(8.79317251367399969873e1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(7.11544750618563894466e1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(2.31251620126765340583e1));

  __m256d y = _mm256_mul_pd(_mm256_mul_pd(m, z), _mm256_div_pd(p, q));
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, y);
  __m256d r = _mm256_add_pd(m, y);
  r = _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);
  return r;
}

double a_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3]));
  for (; i < n; ++i) s += x[i];
  return s;
}

double a_dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3]));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double a_max(const double* x, std::size_t n) {
  double m = x[0];
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    m = lanes[0];
    for (int k = 1; k < 4; ++k) m = lanes[k] > m ? lanes[k] : m;
  }
  for (; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

double a_min(const double* x, std::size_t n) {
  double m = x[0];
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    m = lanes[0];
    for (int k = 1; k < 4; ++k) m = lanes[k] < m ? lanes[k] : m;
  }
  for (; i < n; ++i) m = x[i] < m ? x[i] : m;
  return m;
}

double a_max_abs(const double* x, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = 0.0;
  for (int k = 0; k < 4; ++k) m = lanes[k] > m ? lanes[k] : m;
  for (; i < n; ++i) {
    const double a = std::fabs(x[i]);
    m = a > m ? a : m;
  }
  return m;
}

void a_log_abs(const double* x, double* out, std::size_t n) {
  const __m256d tiny = _mm256_set1_pd(2.2250738585072014e-308);  // smallest normal
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d small = _mm256_cmp_pd(v, tiny, _CMP_LT_OQ);
    if (_mm256_movemask_pd(small) == 0) {
      _mm256_storeu_pd(out + i, log4(v));
    } else {
      // zero or denormal lanes: go through libm lane by lane
      for (int k = 0; k < 4; ++k)
        out[i + k] = x[i + k] > 0.0 ? std::log(x[i + k]) : kLogZeroSentinel;
    }
  }
  for (; i < n; ++i) out[i] = x[i] > 0.0 ? std::log(x[i]) : kLogZeroSentinel;
}

void a_pow_field_exp(const double* x, const double* e, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    alignas(32) double lg[4];
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d tiny = _mm256_set1_pd(2.2250738585072014e-308);
    if (_mm256_movemask_pd(_mm256_cmp_pd(v, tiny, _CMP_LT_OQ)) == 0) {
      _mm256_store_pd(lg, log4(v));
      const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(e + i), _mm256_load_pd(lg));
      _mm256_storeu_pd(out + i, exp4(t));
    } else {
      for (int k = 0; k < 4; ++k) {
        const double xv = x[i + k];
        out[i + k] = xv > 0.0 ? std::exp(e[i + k] * std::log(xv))
                              : (e[i + k] >= 0.0 ? 0.0 : HUGE_VAL);
      }
    }
  }
  for (; i < n; ++i)
    out[i] = x[i] > 0.0 ? std::exp(e[i] * std::log(x[i])) : (e[i] >= 0.0 ? 0.0 : HUGE_VAL);
}

void a_pow_scalar_exp(const double* x, double s, double* out, std::size_t n) {
  std::size_t i = 0;
  const __m256d sv = _mm256_set1_pd(s);
  const __m256d tiny = _mm256_set1_pd(2.2250738585072014e-308);
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    if (_mm256_movemask_pd(_mm256_cmp_pd(v, tiny, _CMP_LT_OQ)) == 0) {
      _mm256_storeu_pd(out + i, exp4(_mm256_mul_pd(sv, log4(v))));
    } else {
      for (int k = 0; k < 4; ++k) {
        const double xv = x[i + k];
        out[i + k] = xv > 0.0 ? std::exp(s * std::log(xv)) : (s >= 0.0 ? 0.0 : HUGE_VAL);
      }
    }
  }
  for (; i < n; ++i)
    out[i] = x[i] > 0.0 ? std::exp(s * std::log(x[i])) : (s >= 0.0 ? 0.0 : HUGE_VAL);
}

double a_modular_sum(const double* logs, const double* p, double log_lambda, std::size_t n) {
  const __m256d ll = _mm256_set1_pd(log_lambda);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t =
        _mm256_mul_pd(_mm256_loadu_pd(p + i), _mm256_sub_pd(_mm256_loadu_pd(logs + i), ll));
    acc = _mm256_add_pd(acc, exp4(t));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3]));
  for (; i < n; ++i) s += std::exp(p[i] * (logs[i] - log_lambda));
  return s;
}

double a_gather_sum(const double* base, const std::int32_t* idx, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i ix = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
    acc = _mm256_add_pd(acc, _mm256_i32gather_pd(base, ix, 8));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3]));
  for (; i < n; ++i) s += base[idx[i]];
  return s;
}

double a_gather_max(const double* base, const std::int32_t* idx, std::size_t n) {
  double m = base[idx[0]];
  std::size_t i = 0;
  if (n >= 4) {
    const __m128i ix0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
    __m256d acc = _mm256_i32gather_pd(base, ix0, 8);
    for (i = 4; i + 4 <= n; i += 4) {
      const __m128i ix = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
      acc = _mm256_max_pd(acc, _mm256_i32gather_pd(base, ix, 8));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    m = lanes[0];
    for (int k = 1; k < 4; ++k) m = lanes[k] > m ? lanes[k] : m;
  }
  for (; i < n; ++i) {
    const double v = base[idx[i]];
    m = v > m ? v : m;
  }
  return m;
}

double a_gather_min(const double* base, const std::int32_t* idx, std::size_t n) {
  double m = base[idx[0]];
  std::size_t i = 0;
  if (n >= 4) {
    const __m128i ix0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
    __m256d acc = _mm256_i32gather_pd(base, ix0, 8);
    for (i = 4; i + 4 <= n; i += 4) {
      const __m128i ix = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
      acc = _mm256_min_pd(acc, _mm256_i32gather_pd(base, ix, 8));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    m = lanes[0];
    for (int k = 1; k < 4; ++k) m = lanes[k] < m ? lanes[k] : m;
  }
  for (; i < n; ++i) {
    const double v = base[idx[i]];
    m = v < m ? v : m;
  }
  return m;
}

}  // namespace

const Impl& avx2_impl() {
  static const Impl impl = {a_sum,         a_dot,           a_max,
                            a_min,         a_max_abs,       a_log_abs,
                            a_pow_scalar_exp, a_pow_field_exp, a_modular_sum,
                            a_gather_sum,  a_gather_max,    a_gather_min};
  return impl;
}

}  // namespace rholab::kernels::detail

#else

namespace rholab::kernels::detail {
const Impl& avx2_impl() { return scalar_impl(); }
}  // namespace rholab::kernels::detail

#endif
