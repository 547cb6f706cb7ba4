#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "rlxi/index.hpp"
#include "rlxi/oracle.hpp"

namespace rlxi {

// Inclusive rank interval in a grid universe; lo > hi when empty.
struct RankRange {
  std::uint32_t lo = 1, hi = 0;
  bool empty() const { return lo > hi; }
};

// Ranks whose reversed expansions start with rev(p[1..q]).
RankRange x_range(const Index& idx, std::string_view p, std::uint64_t q);
// Ranks whose suffix expansions start with the given pattern suffix.
RankRange y_range(const Index& idx, std::string_view suffix);

std::uint64_t count(const Index& idx, std::string_view p);

struct CountBreakdown {
  struct Cut {
    std::uint64_t q = 0;
    std::uint64_t child_sum = 0;  // sequence-rule points
    std::uint64_t run_sum = 0;    // run-length count points
  };
  struct Pass {
    std::uint64_t rho = 0, q = 0;
    std::uint64_t add = 0;  // straddling-alignment credit
    std::uint64_t sub = 0;  // single-boundary overlap correction
  };
  std::uint64_t single = 0;  // m = 1 answer
  std::vector<Cut> cuts;
  std::vector<Pass> passes;
  std::uint64_t total = 0;
};

// Same arithmetic as count, kept per cut for inspection and tests.
CountBreakdown count_debug(const Index& idx, std::string_view p);

std::vector<std::uint64_t> locate(const Index& idx, std::string_view p);
// As locate, before sorting and duplicate suppression.
std::vector<std::uint64_t> locate_raw(const Index& idx, std::string_view p);

std::vector<Mem> k_mems(const Index& idx, std::string_view p, std::uint64_t k);

}  // namespace rlxi
