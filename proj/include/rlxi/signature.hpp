#ifndef RLXI_SIGNATURE_HPP
#define RLXI_SIGNATURE_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "rlxi/common.hpp"

namespace rlxi {

// Karp-Rabin signatures: kappa(S) = sum S[i]·c^(i-1) mod mu with mu = 2^61-1.
// Symbols are hashed as byte+1 so a leading NUL is not absorbed.
// The base is drawn per index build; key collisions are handled by rebasing
// at build time and by extraction-verified lookups at query time.

inline constexpr std::uint64_t kSigModulus = (std::uint64_t(1) << 61) - 1;

inline std::uint64_t sig_mod(std::uint64_t x) {
  x = (x & kSigModulus) + (x >> 61);
  return x >= kSigModulus ? x - kSigModulus : x;
}

inline std::uint64_t sig_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kSigModulus ? s - kSigModulus : s;
}

inline std::uint64_t sig_sub(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kSigModulus - b;
}

inline std::uint64_t sig_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return sig_mod(static_cast<std::uint64_t>(p & kSigModulus) +
                 static_cast<std::uint64_t>(p >> 61));
}

std::uint64_t sig_pow(std::uint64_t base, std::uint64_t exp);

struct SignatureScheme {
  std::uint64_t base = 0;

  // Deterministic base from (seed, attempt); always in [2, mu-2].
  static SignatureScheme from_seed(std::uint64_t seed, std::uint64_t attempt = 0);
};

// kappa of a whole string.
std::uint64_t signature_of(std::string_view s, const SignatureScheme& sc);

// Incremental evaluator: append characters left to right.
class SignatureAccumulator {
 public:
  explicit SignatureAccumulator(const SignatureScheme& sc)
      : base_(sc.base), pow_(1), sig_(0) {}
  void push(unsigned char b) {
    sig_ = sig_add(sig_, sig_mul(std::uint64_t(b) + 1, pow_));
    pow_ = sig_mul(pow_, base_);
  }
  std::uint64_t value() const { return sig_; }

 private:
  std::uint64_t base_, pow_, sig_;
};

// Prefix tables over one string: kappa of any substring in O(1).
class PrefixSignatures {
 public:
  PrefixSignatures(std::string_view s, const SignatureScheme& sc);

  // kappa(S[i..j]), 1-based inclusive; empty range (i = j+1) gives 0.
  std::uint64_t substring(std::uint64_t i, std::uint64_t j) const;
  std::uint64_t full() const { return pref_.back(); }
  std::uint64_t size() const { return pref_.size() - 1; }

 private:
  std::vector<std::uint64_t> pref_;  // pref_[j] = kappa(S[1..j])
  std::vector<std::uint64_t> ipow_;  // ipow_[j] = c^-j
};

}  // namespace rlxi

#endif
