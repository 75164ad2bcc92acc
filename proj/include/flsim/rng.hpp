#pragma once
// Seeded, portable random streams. Every stochastic component of the
// simulator draws from an Rng derived via derive_seed(), so runs are
// reproducible bit-for-bit and independent of execution order.

#include <cstdint>
#include <cmath>
#include <cstddef>
#include <vector>

namespace flsim {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Purpose tags so independent streams never collide.
enum class Stream : std::uint64_t {
  model_init = 1,
  data_synth = 2,
  test_split = 3,
  partition = 4,
  local_train = 5,
  selection = 6,
  quantize = 7,
  channel = 8,
  analog_noise = 9,
  availability = 10,
  run = 11,
};

inline std::uint64_t derive_seed(std::uint64_t base, Stream s,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = splitmix64(base ^ 0x6c62272e07bb0142ull);
  h = splitmix64(h ^ static_cast<std::uint64_t>(s));
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return h;
}

// splitmix64 counter generator with hand-rolled distribution transforms.
// Standard-library distributions are not bit-stable across toolchains;
// these are.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_++); }

  // [0, 1), 53-bit resolution
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // standard normal, Box-Muller (second value cached)
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Exponential(mean 1)
  double exponential() { return -std::log(1.0 - uniform()); }

  // [0, n), n > 0; Lemire multiply-shift
  std::size_t uniform_below(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace flsim
