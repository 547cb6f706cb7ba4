#ifndef RLXI_PERIODS_HPP
#define RLXI_PERIODS_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "rlxi/common.hpp"

namespace rlxi {

class Grammar;

// border[i] (1-based, i in [1..|s|]) = length of the longest proper border of
// s[1..i]. border[0] = 0.
std::vector<std::uint64_t> border_array(std::string_view s);

// Shortest period p(s) = |s| - border[|s|].
std::uint64_t shortest_period(std::string_view s);

// True iff s[i] = s[i+p] for all valid i. p must be in [1, |s|].
bool is_period(std::string_view s, std::uint64_t p);

// All periods of s in increasing order (chain of borders; |s| is always last).
std::vector<std::uint64_t> all_periods(std::string_view s);

// p(exp(B)^s) for a run-length rule A -> B^s. Equals the shortest period of
// exp(B)·exp(B): a period <= |B| of the square extends over all s copies.
// Materializes 2|B| characters; guarded by limit.
std::uint64_t period_of_power(const Grammar& g, Symbol base, std::uint64_t s,
                              std::uint64_t limit = std::uint64_t(1) << 28);

}  // namespace rlxi

#endif
