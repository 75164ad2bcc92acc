// AVX2 kernel variants. Bit-identical to the scalar reference: same blocked
// accumulation (vector lanes are the four partial sums), same lane-combine
// order, same tail handling, mul+add only (no FMA).

#include "kernel_table.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define FLSIM_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define FLSIM_HAVE_AVX2_BUILD 0
#endif

namespace flsim::kernels::detail {

#if FLSIM_HAVE_AVX2_BUILD

namespace {

inline double lane(__m128d v, int i) {
  return i == 0 ? _mm_cvtsd_f64(v) : _mm_cvtsd_f64(_mm_unpackhi_pd(v, v));
}

// (l0 + l1) + (l2 + l3), matching the scalar partial-sum combine
inline double combine_sum(__m256d acc) {
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  return (lane(lo, 0) + lane(lo, 1)) + (lane(hi, 0) + lane(hi, 1));
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4)
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double r = combine_sum(acc);
  for (std::size_t i = n4; i < n; ++i) r += x[i];
  return r;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, prod);
  }
  double r = combine_sum(acc);
  for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
  return r;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (std::size_t i = n4; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_avx2(double* x, double a, std::size_t n) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  for (std::size_t i = n4; i < n; ++i) x[i] = x[i] * a;
}

inline double min_pd1(double a, double b) { return a < b ? a : b; }
inline double max_pd1(double a, double b) { return a > b ? a : b; }

std::pair<double, double> min_max_avx2(const double* x, std::size_t n) {
  if (n >= 4) {
    __m256d vlo = _mm256_loadu_pd(x);
    __m256d vhi = vlo;
    std::size_t n4 = n - n % 4;
    for (std::size_t i = 4; i < n4; i += 4) {
      __m256d v = _mm256_loadu_pd(x + i);
      vlo = _mm256_min_pd(vlo, v);
      vhi = _mm256_max_pd(vhi, v);
    }
    __m128d lo2 = _mm256_castpd256_pd128(vlo);
    __m128d lo2h = _mm256_extractf128_pd(vlo, 1);
    __m128d hi2 = _mm256_castpd256_pd128(vhi);
    __m128d hi2h = _mm256_extractf128_pd(vhi, 1);
    double lo = min_pd1(min_pd1(lane(lo2, 0), lane(lo2, 1)),
                        min_pd1(lane(lo2h, 0), lane(lo2h, 1)));
    double hi = max_pd1(max_pd1(lane(hi2, 0), lane(hi2, 1)),
                        max_pd1(lane(hi2h, 0), lane(hi2h, 1)));
    for (std::size_t i = n4; i < n; ++i) {
      lo = min_pd1(lo, x[i]);
      hi = max_pd1(hi, x[i]);
    }
    return {lo, hi};
  }
  double lo = x[0], hi = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    lo = min_pd1(lo, x[i]);
    hi = max_pd1(hi, x[i]);
  }
  return {lo, hi};
}

void dequant_levels_avx2(const std::uint32_t* codes, double lo, double hi,
                         double step, std::uint32_t max_code, double* out,
                         std::size_t n) {
  // codes fit in int32 (bit widths above 31 bypass the code path)
  __m256d vlo = _mm256_set1_pd(lo);
  __m256d vhi = _mm256_set1_pd(hi);
  __m256d vstep = _mm256_set1_pd(step);
  __m128i vmax = _mm_set1_epi32(static_cast<int>(max_code));
  std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    __m128i c = _mm_loadu_si128(reinterpret_cast<const __m128i*>(codes + i));
    __m256d vals =
        _mm256_add_pd(vlo, _mm256_mul_pd(_mm256_cvtepi32_pd(c), vstep));
    __m256i eq = _mm256_cvtepi32_epi64(_mm_cmpeq_epi32(c, vmax));
    _mm256_storeu_pd(out + i,
                     _mm256_blendv_pd(vals, vhi, _mm256_castsi256_pd(eq)));
  }
  for (std::size_t i = n4; i < n; ++i) {
    out[i] = codes[i] == max_code ? hi
                                  : lo + static_cast<double>(codes[i]) * step;
  }
}

const KernelTable avx2_kernels = {sum_avx2,     dot_avx2,
                                  axpy_avx2,    scale_avx2,
                                  min_max_avx2, dequant_levels_avx2};

}  // namespace

const KernelTable* avx2_table() { return &avx2_kernels; }

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

#else

const KernelTable* avx2_table() { return nullptr; }
bool cpu_has_avx2() { return false; }

#endif

}  // namespace flsim::kernels::detail
