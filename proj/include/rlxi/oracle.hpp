#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "rlxi/common.hpp"

namespace rlxi {

// Scan-based reference answers for index queries.

std::uint64_t naive_count(std::string_view text, std::string_view pattern);

// 1-based starting positions, ascending.
std::vector<std::uint64_t> naive_locate(std::string_view text, std::string_view pattern);

struct Mem {
  std::uint64_t i = 0;      // window in the pattern, 1-based inclusive
  std::uint64_t j = 0;
  std::uint64_t count = 0;  // occurrences of pattern[i..j] in the text
};

// Maximal pattern substrings occurring at least k times, ordered by i.
std::vector<Mem> naive_mems(std::string_view text, std::string_view pattern, std::uint64_t k);

}  // namespace rlxi
