#include "gof/rng.hpp"

#include <cmath>

namespace gof {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Stream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();  // log(0) guard; hit with prob 2^-53
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  constexpr double kTwoPi = 6.28318530717958647692;
  spare_ = r * std::sin(kTwoPi * u2);
  have_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

Stream substream(const RunSeed& seed, std::string_view tag,
                 std::uint64_t block) {
  // Mix master, tag hash and block through alternating xor / splitmix steps;
  // every stage feeds the whitened state forward so nearby blocks do not get
  // nearby Mersenne Twister seeds.
  std::uint64_t st = seed.master;
  (void)splitmix64(st);
  st ^= fnv1a64(tag);
  (void)splitmix64(st);
  st ^= block;
  return Stream(splitmix64(st));
}

}  // namespace gof
