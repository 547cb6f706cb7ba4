#pragma once

#include <cstdint>
#include <string>

#include "rlxi/common.hpp"

namespace rlxi {

class Grammar;

// exp(sym)[i..j], 1-based inclusive. i > j yields the empty string.
std::string extract(const Grammar& g, Symbol sym, std::uint64_t i, std::uint64_t j);

// Single character exp(sym)[k], 1-based.
unsigned char symbol_at(const Grammar& g, Symbol sym, std::uint64_t k);

// Full expansion of the start symbol, refused above max_bytes.
std::string decompress(const Grammar& g, std::uint64_t max_bytes = std::uint64_t(1) << 28);

}  // namespace rlxi
