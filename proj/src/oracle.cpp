#include "rlxi/oracle.hpp"

#include <algorithm>
#include <string>

namespace rlxi {

namespace {

// z[i] = length of the longest common prefix of s and s[i..], z[0] = |s|.
std::vector<std::uint64_t> z_array(std::string_view s) {
  std::size_t n = s.size();
  std::vector<std::uint64_t> z(n, 0);
  if (n == 0) return z;
  z[0] = n;
  std::size_t l = 0, r = 0;  // rightmost match window [l, r)
  for (std::size_t i = 1; i < n; ++i) {
    if (i < r) z[i] = std::min<std::uint64_t>(r - i, z[i - l]);
    while (i + z[i] < n && s[z[i]] == s[i + z[i]]) ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }
  return z;
}

// Match length of the pattern prefix at every text position. No separator:
// matches running past the pattern are capped at its length.
std::vector<std::uint64_t> prefix_match_lengths(std::string_view text,
                                                std::string_view pattern) {
  std::string s;
  s.reserve(pattern.size() + text.size());
  s.append(pattern);
  s.append(text);
  auto z = z_array(s);
  std::vector<std::uint64_t> out(text.size());
  for (std::size_t t = 0; t < text.size(); ++t)
    out[t] = std::min<std::uint64_t>(z[pattern.size() + t], pattern.size());
  return out;
}

}  // namespace

std::uint64_t naive_count(std::string_view text, std::string_view pattern) {
  if (pattern.empty()) raise(ErrorCode::EmptyString, "empty pattern");
  if (pattern.size() > text.size()) return 0;
  auto len = prefix_match_lengths(text, pattern);
  std::uint64_t c = 0;
  for (std::uint64_t l : len) c += (l == pattern.size());
  return c;
}

std::vector<std::uint64_t> naive_locate(std::string_view text, std::string_view pattern) {
  if (pattern.empty()) raise(ErrorCode::EmptyString, "empty pattern");
  std::vector<std::uint64_t> out;
  if (pattern.size() > text.size()) return out;
  auto len = prefix_match_lengths(text, pattern);
  for (std::size_t t = 0; t < len.size(); ++t)
    if (len[t] == pattern.size()) out.push_back(t + 1);
  return out;
}

std::vector<Mem> naive_mems(std::string_view text, std::string_view pattern, std::uint64_t k) {
  if (pattern.empty()) raise(ErrorCode::EmptyString, "empty pattern");
  if (k < 1) raise(ErrorCode::OutOfRange, "k must be at least 1");
  std::size_t m = pattern.size();
  std::vector<Mem> out;
  std::uint64_t prev_j = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    std::size_t sub = m - i + 1;  // |pattern[i..m]|
    auto len = prefix_match_lengths(text, pattern.substr(i - 1));
    // ge[l] = text positions matching at least l characters of the suffix.
    std::vector<std::uint64_t> ge(sub + 2, 0);
    for (std::uint64_t l : len) ++ge[l];
    for (std::size_t l = sub; l-- > 0;) ge[l] += ge[l + 1];
    std::size_t best = sub;
    while (best > 0 && ge[best] < k) --best;
    std::uint64_t j = i - 1 + best;
    if (best > 0 && (i == 1 || j > prev_j)) out.push_back({i, j, ge[best]});
    prev_j = j;
  }
  return out;
}

}  // namespace rlxi
