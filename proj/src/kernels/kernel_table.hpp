#pragma once
// Internal dispatch table shared by the backend translation units.

#include <cstdint>
#include <cstddef>
#include <utility>

namespace flsim::kernels::detail {

struct KernelTable {
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double*, double, std::size_t);
  std::pair<double, double> (*min_max)(const double*, std::size_t);
  void (*dequant_levels)(const std::uint32_t*, double, double, double,
                         std::uint32_t, double*, std::size_t);
};

const KernelTable& scalar_table();

// nullptr when the build target has no AVX2 support compiled in.
const KernelTable* avx2_table();
bool cpu_has_avx2();

}  // namespace flsim::kernels::detail
