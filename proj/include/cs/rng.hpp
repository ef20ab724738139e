#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace cs {

/// SplitMix64 finalizer; also used to derive independent substreams as
/// hash(seed, stream_index) so parallel sweeps are order-independent.
inline uint64_t hash64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t master, uint64_t stream) {
  return hash64(master ^ (hash64(stream) + 0x9e3779b97f4a7c15ULL));
}

/// SplitMix64 stream. Gaussian variates via polar Box-Muller so output is
/// identical across platforms (no std::normal_distribution).
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  uint64_t next_below(uint64_t n) { return next_u64() % n; }

  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  /// Uniformly random size-k subset of {0,...,n-1}, returned sorted.
  std::vector<int> next_subset(int n, int k) {
    // partial Fisher-Yates on an index pool
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
      const int j = i + static_cast<int>(next_below(static_cast<uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cs
