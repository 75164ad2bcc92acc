#pragma once
// Vector math kernels used by the training, quantization and aggregation
// inner loops. A scalar reference implementation defines the exact result
// (including the blocked accumulation order for reductions); SIMD variants
// are selected at runtime and must produce bit-identical output — that is
// what keeps traces reproducible regardless of the host CPU.
//
// Reduction contract: elements are accumulated into 4 interleaved partial
// sums over the main blocks, combined as (p0 + p1) + (p2 + p3), then the
// tail elements are added one by one. Elementwise kernels use a single
// mul/add per element (the project builds with -ffp-contract=off).

#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

namespace flsim::kernels {

enum class Backend { scalar, avx2 };

// Resolved once per process: FLSIM_KERNELS=scalar|avx2|auto, else best
// supported by the CPU.
Backend active_backend();
std::string backend_name(Backend b);
bool backend_supported(Backend b);

// Test hook; throws std::runtime_error if the backend is unsupported here.
void force_backend(Backend b);

double sum(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

// x *= a
void scale(std::span<double> x, double a);

// (min, max) with minpd/maxpd tie semantics; x must be nonempty
std::pair<double, double> min_max(std::span<const double> x);

// out[r] = dot(w[r*cols .. r*cols+cols], x) for each of `rows` rows
void matvec(std::span<const double> w, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> out);

// out[i] = codes[i] == max_code ? hi : lo + codes[i] * step
// (keeps the top quantization level exactly at hi)
void dequant_levels(std::span<const std::uint32_t> codes, double lo, double hi,
                    double step, std::uint32_t max_code, std::span<double> out);

}  // namespace flsim::kernels
