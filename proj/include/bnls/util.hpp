#pragma once
// Small shared utilities: deterministic RNG, stable float formatting,
// FNV-1a digests, and an index-ordered parallel-for.

#include <cstdint>
#include <cstdio>
#include <cmath>
#include <string>
#include <thread>
#include <vector>
#include <atomic>
#include <functional>

namespace bnls {

// splitmix64: used to expand a master seed into per-task seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256**: deterministic across platforms (std:: distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }
  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }
  // uniform in [0,1)
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  // uniform in (0,1] (safe as a log argument)
  double uniform_pos() { return ((next() >> 11) + 1) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // standard normal via Box-Muller (deterministic, two draws per call)
  double normal() {
    double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    double th = 6.283185307179586476925286766559 * uniform();
    return r * std::cos(th);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Derive a child seed for task index i from a master seed.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t st =
      master ^ (0xa0761d6478bd642fULL + index * 0x1000000000000003ULL);
  return splitmix64(st);
}

// Compensated (Kahan) accumulator: keeps reduction error O(eps) instead of
// O(n eps), which the optimizers need — at n = 4096 the plain-loop noise in
// the energy sits exactly at the Armijo decision scale and stalls descent.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

// %.17g: round-trip decimal formatting used for every float in artifacts.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}
inline std::uint64_t fnv1a64(const std::string& s) {
  return fnv1a64(s.data(), s.size());
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work items are
// claimed from an atomic counter; each item must write only to its own slot
// so results are identical for any job count.
inline void parallel_for_ordered(int jobs, std::size_t count,
                                 const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::min<std::size_t>(jobs, count);
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace bnls
