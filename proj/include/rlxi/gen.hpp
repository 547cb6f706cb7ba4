#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rlxi/common.hpp"

namespace rlxi {

class Grammar;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// xoshiro256** seeded via splitmix64. Self-contained so generated
// grammars and patterns are identical across platforms and libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& v : s_) v = splitmix64(x);
  }

  std::uint64_t next() {
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, bound), bound >= 1. Fixed-point multiply keeps the
  // draw count per call constant, which the determinism tests rely on.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::array<std::uint64_t, 4> s_;
};

struct GenParams {
  std::uint64_t max_rules = 30;
  unsigned alphabet = 4;
  double rl_bias = 0.5;        // share of rules that are run-length
  std::uint64_t max_n = 5000;  // bound on |exp(start)|
};

Grammar gen_grammar(std::uint64_t seed, const GenParams& params);

// Mixed pattern batch: text substrings, single-byte mutations, periodic
// powers (period at most len/2), and random strings over the text alphabet.
// With a grammar given, periodic seeds are drawn from run-length expansions.
std::vector<std::string> gen_patterns(std::string_view text, std::uint64_t seed,
                                      std::size_t count, std::size_t max_len,
                                      const Grammar* g = nullptr);

}  // namespace rlxi
