#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>

namespace holodual {

// Counter-based generator: every value is a pure function of
// (seed, index, slot), so sample i sees the same stream no matter how work is
// partitioned across threads, and runs with larger counts extend smaller runs
// without disturbing their prefix.
namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t index,
                                  std::uint64_t slot) {
  std::uint64_t h = detail::mix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = detail::mix64(h ^ index * 0xd1342543de82ef95ULL);
  h = detail::mix64(h ^ slot * 0xaf251af3b0f025b5ULL);
  return h;
}

// Uniform double in [0,1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t index,
                        std::uint64_t slot) {
  return static_cast<double>(counter_bits(seed, index, slot) >> 11) *
         0x1.0p-53;
}

// Per-sample stream: slot advances as values are drawn.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index)
      : seed_(seed), index_(index) {}

  double next() { return uniform01(seed_, index_, slot_++); }
  double next_in(double a, double b) { return a + (b - a) * next(); }

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t slot_ = 0;
};

// Worker-count policy: min(requested, HOLODUAL_THREADS, hardware).
inline unsigned worker_count(unsigned requested = 0) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned cap = hw;
  if (const char* env = std::getenv("HOLODUAL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = static_cast<unsigned>(v);
  }
  unsigned n = (requested == 0) ? hw : requested;
  return std::min(n, cap);
}

}  // namespace holodual
