#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace otlab {

// densities below this are treated as exact zeros; 0*log(0) = 0 everywhere
inline constexpr double kDensityFloor = 1e-300;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ZeroMassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NegativeDensityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GridMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonMonotoneMapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotEvenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double clamp_density(double v) {
  if (v < 0.0 && v > -1e-15) v = 0.0;
  return v < kDensityFloor ? 0.0 : v;
}

inline double xlogx(double v) { return v <= 0.0 ? 0.0 : v * std::log(v); }

// splitmix64: deterministic across platforms, used for all seeded sampling
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0,1)
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

// derive a stream for job `index` so results never depend on scheduling
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x61c8864680b583ebULL * (index + 1)));
  g.next();
  return g.next();
}

// runs fn(i) for i in [0,n); deterministic result layout is the caller's job
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned threads = 0);

inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

}  // namespace otlab
