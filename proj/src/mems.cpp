#include "rlxi/query.hpp"

namespace rlxi {

// Two-pointer scan: the largest j with count(p[i..j]) >= k never moves left
// as i grows, so at most 2m counting queries are spent in total.
std::vector<Mem> k_mems(const Index& idx, std::string_view p, std::uint64_t k) {
  if (p.empty()) raise(ErrorCode::EmptyString, "empty pattern");
  if (k < 1) raise(ErrorCode::OutOfRange, "k must be at least 1");
  std::uint64_t m = p.size();
  std::vector<Mem> out;
  std::uint64_t j = 0;       // right end of the current window
  std::uint64_t prev_j = 0;  // right end reached at the previous i
  std::uint64_t cnt = 0;     // count of p[i..j]; fresh whenever j advanced at this i
  for (std::uint64_t i = 1; i <= m; ++i) {
    if (j < i - 1) j = i - 1;
    while (j < m) {
      std::uint64_t probe = count(idx, p.substr(i - 1, j - i + 2));
      if (probe < k) break;
      cnt = probe;
      ++j;
    }
    // Emitting only when j moved keeps windows left-maximal, and means cnt
    // was computed for exactly this (i, j).
    if (j >= i && (i == 1 || j > prev_j)) out.push_back({i, j, cnt});
    prev_j = j;
  }
  return out;
}

}  // namespace rlxi
