// Scalar reference kernels and runtime backend dispatch.
//
// The scalar code below is the definition of each kernel's result. Keep the
// blocked accumulation structure intact: SIMD backends replicate it lane for
// lane and the equivalence tests assert bit-identical output.

#include "flsim/kernels.hpp"
#include "kernel_table.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace flsim::kernels {
namespace detail {

namespace {

double sum_scalar(const double* x, std::size_t n) {
  double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
  std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    p0 += x[i];
    p1 += x[i + 1];
    p2 += x[i + 2];
    p3 += x[i + 3];
  }
  double r = (p0 + p1) + (p2 + p3);
  for (std::size_t i = n4; i < n; ++i) r += x[i];
  return r;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
  std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    p0 += a[i] * b[i];
    p1 += a[i + 1] * b[i + 1];
    p2 += a[i + 2] * b[i + 2];
    p3 += a[i + 3] * b[i + 3];
  }
  double r = (p0 + p1) + (p2 + p3);
  for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
  return r;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_scalar(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] * a;
}

// minpd/maxpd semantics: on ties the second operand wins.
inline double min_pd(double acc, double v) { return acc < v ? acc : v; }
inline double max_pd(double acc, double v) { return acc > v ? acc : v; }

std::pair<double, double> min_max_scalar(const double* x, std::size_t n) {
  if (n >= 4) {
    double lo0 = x[0], lo1 = x[1], lo2 = x[2], lo3 = x[3];
    double hi0 = x[0], hi1 = x[1], hi2 = x[2], hi3 = x[3];
    std::size_t n4 = n - n % 4;
    for (std::size_t i = 4; i < n4; i += 4) {
      lo0 = min_pd(lo0, x[i]);
      lo1 = min_pd(lo1, x[i + 1]);
      lo2 = min_pd(lo2, x[i + 2]);
      lo3 = min_pd(lo3, x[i + 3]);
      hi0 = max_pd(hi0, x[i]);
      hi1 = max_pd(hi1, x[i + 1]);
      hi2 = max_pd(hi2, x[i + 2]);
      hi3 = max_pd(hi3, x[i + 3]);
    }
    double lo = min_pd(min_pd(lo0, lo1), min_pd(lo2, lo3));
    double hi = max_pd(max_pd(hi0, hi1), max_pd(hi2, hi3));
    for (std::size_t i = n4; i < n; ++i) {
      lo = min_pd(lo, x[i]);
      hi = max_pd(hi, x[i]);
    }
    return {lo, hi};
  }
  double lo = x[0], hi = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    lo = min_pd(lo, x[i]);
    hi = max_pd(hi, x[i]);
  }
  return {lo, hi};
}

void dequant_levels_scalar(const std::uint32_t* codes, double lo, double hi,
                           double step, std::uint32_t max_code, double* out,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = codes[i] == max_code ? hi
                                  : lo + static_cast<double>(codes[i]) * step;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {sum_scalar,     dot_scalar,
                                axpy_scalar,    scale_scalar,
                                min_max_scalar, dequant_levels_scalar};
  return t;
}

}  // namespace detail

namespace {

using detail::KernelTable;

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &detail::scalar_table();
    case Backend::avx2:
      return detail::avx2_table();
  }
  return nullptr;
}

void init_dispatch() {
  if (g_table.load(std::memory_order_acquire)) return;

  Backend pick = detail::cpu_has_avx2() && detail::avx2_table()
                     ? Backend::avx2
                     : Backend::scalar;
  if (const char* env = std::getenv("FLSIM_KERNELS")) {
    std::string v(env);
    if (v == "scalar") {
      pick = Backend::scalar;
    } else if (v == "avx2") {
      if (!backend_supported(Backend::avx2))
        throw std::runtime_error("FLSIM_KERNELS=avx2: not supported on this CPU/build");
      pick = Backend::avx2;
    } else if (v != "auto" && !v.empty()) {
      throw std::runtime_error("FLSIM_KERNELS: unknown value '" + v + "'");
    }
  }
  g_backend.store(pick, std::memory_order_relaxed);
  g_table.store(table_for(pick), std::memory_order_release);
}

const KernelTable& tab() {
  init_dispatch();
  return *g_table.load(std::memory_order_acquire);
}

}  // namespace

Backend active_backend() {
  init_dispatch();
  return g_backend.load(std::memory_order_relaxed);
}

std::string backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend b) {
  return table_for(b) != nullptr &&
         (b != Backend::avx2 || detail::cpu_has_avx2());
}

void force_backend(Backend b) {
  if (!backend_supported(b))
    throw std::runtime_error("kernel backend not supported: " + backend_name(b));
  g_backend.store(b, std::memory_order_relaxed);
  g_table.store(table_for(b), std::memory_order_release);
}

double sum(std::span<const double> x) { return tab().sum(x.data(), x.size()); }

double dot(std::span<const double> a, std::span<const double> b) {
  return tab().dot(a.data(), b.data(), a.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  tab().axpy(a, x.data(), y.data(), x.size());
}

void scale(std::span<double> x, double a) {
  tab().scale(x.data(), a, x.size());
}

std::pair<double, double> min_max(std::span<const double> x) {
  return tab().min_max(x.data(), x.size());
}

void matvec(std::span<const double> w, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> out) {
  const KernelTable& t = tab();
  for (std::size_t r = 0; r < rows; ++r)
    out[r] = t.dot(w.data() + r * cols, x.data(), cols);
}

void dequant_levels(std::span<const std::uint32_t> codes, double lo, double hi,
                    double step, std::uint32_t max_code,
                    std::span<double> out) {
  tab().dequant_levels(codes.data(), lo, hi, step, max_code, out.data(),
                       codes.size());
}

}  // namespace flsim::kernels
