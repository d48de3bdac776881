#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gof {

// Master seed for a whole run.  All randomness is drawn through substreams
// derived from (master, purpose tag, block index), so identical triples give
// identical draws and replicated work can be sharded into fixed-size blocks
// across any number of workers without changing any result.
struct RunSeed {
  std::uint64_t master = 0;
};

// FNV-1a over the tag string; stable across platforms.
std::uint64_t fnv1a64(std::string_view s);

// One splitmix64 step: advances the state and returns a well-mixed output.
// Used only to decorrelate seed material, never as the draw generator.
std::uint64_t splitmix64(std::uint64_t& state);

// A single stream: 64-bit Mersenne Twister behind uniform and normal draws.
// uniform() maps the top 53 bits to [0,1); normal() is Box-Muller with the
// second variate cached.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double normal();

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Stream substream(const RunSeed& seed, std::string_view tag,
                 std::uint64_t block);

}  // namespace gof
