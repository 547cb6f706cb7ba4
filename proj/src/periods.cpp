#include "rlxi/periods.hpp"

#include <string>

#include "rlxi/extract.hpp"
#include "rlxi/grammar.hpp"
#include "rlxi/signature.hpp"

namespace rlxi {

std::vector<std::uint64_t> border_array(std::string_view s) {
  std::vector<std::uint64_t> b(s.size() + 1, 0);
  std::uint64_t k = 0;
  for (std::uint64_t i = 2; i <= s.size(); ++i) {
    while (k > 0 && s[i - 1] != s[k]) k = b[k];
    if (s[i - 1] == s[k]) ++k;
    b[i] = k;
  }
  return b;
}

std::uint64_t shortest_period(std::string_view s) {
  if (s.empty()) raise(ErrorCode::EmptyString, "shortest_period of empty string");
  return s.size() - border_array(s)[s.size()];
}

bool is_period(std::string_view s, std::uint64_t p) {
  if (p < 1 || p > s.size())
    raise(ErrorCode::OutOfRange, "period " + std::to_string(p) +
                                     " outside [1, " + std::to_string(s.size()) + "]");
  for (std::uint64_t i = 0; i + p < s.size(); ++i)
    if (s[i] != s[i + p]) return false;
  return true;
}

std::vector<std::uint64_t> all_periods(std::string_view s) {
  if (s.empty()) raise(ErrorCode::EmptyString, "all_periods of empty string");
  auto b = border_array(s);
  std::vector<std::uint64_t> ps;
  for (std::uint64_t k = b[s.size()];; k = b[k]) {
    ps.push_back(s.size() - k);
    if (k == 0) break;
  }
  // Border chain yields periods in increasing order already (borders decrease).
  return std::vector<std::uint64_t>(ps.begin(), ps.end());
}

std::uint64_t period_of_power(const Grammar& g, Symbol base, std::uint64_t s,
                              std::uint64_t limit) {
  if (s < 2) raise(ErrorCode::ExponentTooSmall, "run-length exponent < 2");
  std::uint64_t blen = g.length(base);
  if (blen > limit / 2)
    raise(ErrorCode::TooLarge, "period_of_power: 2|B| exceeds limit");
  std::string sq = extract(g, base, 1, blen);
  sq += sq;
  return shortest_period(sq);
}

std::uint64_t sig_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp) {
    if (exp & 1) r = sig_mul(r, base);
    base = sig_mul(base, base);
    exp >>= 1;
  }
  return r;
}

static std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SignatureScheme SignatureScheme::from_seed(std::uint64_t seed, std::uint64_t attempt) {
  std::uint64_t st = seed ^ (0xa076'1d64'78bd'642full + attempt * 0x589965cc75374cc3ull);
  std::uint64_t b;
  do {
    b = splitmix64(st) % kSigModulus;
  } while (b < 2 || b > kSigModulus - 2);
  return SignatureScheme{b};
}

std::uint64_t signature_of(std::string_view s, const SignatureScheme& sc) {
  SignatureAccumulator acc(sc);
  for (unsigned char ch : s) acc.push(ch);
  return acc.value();
}

PrefixSignatures::PrefixSignatures(std::string_view s, const SignatureScheme& sc) {
  pref_.resize(s.size() + 1);
  ipow_.resize(s.size() + 1);
  pref_[0] = 0;
  std::uint64_t pw = 1;
  for (std::uint64_t j = 1; j <= s.size(); ++j) {
    pref_[j] = sig_add(pref_[j - 1],
                       sig_mul(std::uint64_t(static_cast<unsigned char>(s[j - 1])) + 1, pw));
    pw = sig_mul(pw, sc.base);
  }
  std::uint64_t inv = sig_pow(sc.base, kSigModulus - 2);  // Fermat inverse
  ipow_[0] = 1;
  for (std::uint64_t j = 1; j <= s.size(); ++j) ipow_[j] = sig_mul(ipow_[j - 1], inv);
}

std::uint64_t PrefixSignatures::substring(std::uint64_t i, std::uint64_t j) const {
  std::uint64_t n = pref_.size() - 1;
  if (i < 1 || i > j + 1 || j > n)
    raise(ErrorCode::OutOfRange, "substring_sig range [" + std::to_string(i) + ", " +
                                     std::to_string(j) + "] on length " + std::to_string(n));
  if (i == j + 1) return 0;
  return sig_mul(sig_sub(pref_[j], pref_[i - 1]), ipow_[i - 1]);
}

}  // namespace rlxi
