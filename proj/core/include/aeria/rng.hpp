#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace aeria {

// Deterministic splitmix64 stream. Used for every random draw in the project so
// that results are reproducible bit-for-bit across platforms; the standard
// <random> distributions are implementation-defined and would break golden
// outputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  // Unbiased integer in [0, n) via rejection sampling. n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~0ull - (~0ull % n);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  // Knuth's product-of-uniforms method; adequate for the desk-scale means used
  // here (bidder counts of a few dozen).
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    double prod = u01();
    int count = 0;
    while (prod > limit) {
      prod *= u01();
      ++count;
    }
    return count;
  }

 private:
  std::uint64_t state_;
};

// Derives an independent, named stream from a root seed. Streams with distinct
// (name, index) pairs are decorrelated, which keeps bidder draws identical
// across mechanisms while pricing draws stay mechanism-private.
inline Rng named_stream(std::uint64_t root_seed, std::string_view name,
                        std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the label
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  // One splitmix scramble per component so similar seeds do not collide.
  Rng mix(root_seed ^ h);
  std::uint64_t s = mix.next();
  Rng mix2(s + index * 0x9e3779b97f4a7c15ull);
  return Rng(mix2.next());
}

}  // namespace aeria
