#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlxi/index.hpp"

namespace rlxi {

// Self-contained little-endian image: magic, version, total length,
// grammar + point sections, CRC32 trailer. Grids, occurrence model and
// key-length tables are rebuilt on load; the text itself is never stored.
std::vector<std::uint8_t> serialize_index(const Index& idx);

Index deserialize_index(const std::uint8_t* data, std::size_t size);

void save_index(const Index& idx, const std::string& path);
Index load_index(const std::string& path);

std::uint32_t crc32(const std::uint8_t* data, std::size_t size);

inline constexpr std::uint16_t kIndexFormatVersion = 1;

}  // namespace rlxi
