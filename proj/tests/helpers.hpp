#pragma once

#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

#include "rlxi/common.hpp"
#include "rlxi/extract.hpp"
#include "rlxi/grammar.hpp"
#include "rlxi/index.hpp"

#ifndef RLXI_TEST_DATA
#define RLXI_TEST_DATA "."
#endif

namespace rlxi::test {

inline std::string slurp(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string out;
  char buf[65536];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
  std::fclose(f);
  return out;
}

inline std::string data_file(const std::string& name) {
  return std::string(RLXI_TEST_DATA) + "/" + name;
}

// The running example: T = (cgta)^5 t (cgta)^8 (cg)^4 c^5 (cgta)^20, n = 146,
// with five run-length rules and three distinct primitive period strings.
inline Grammar dna_grammar() { return Grammar::from_text(slurp(data_file("dna146.gram"))); }

// ErrorCode thrown by fn, if any.
template <typename Fn>
std::optional<ErrorCode> code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// The string a rank-table entry stands for, materialized by extraction.
inline std::string xkey_string(const Index& idx, const XKey& k) {
  std::string s = extract(idx.grammar, k.sym, 1, k.len);
  return std::string(s.rbegin(), s.rend());
}

inline std::string ykey_string(const Index& idx, const YKey& k) {
  if (k.kind == YKey::Kind::RuleSuffix)
    return extract(idx.grammar, k.sym, k.off + 1, k.off + k.len);
  std::string unit = extract(idx.grammar, k.sym, 1, idx.grammar.length(k.sym));
  std::string out;
  while (out.size() < k.len) out += unit;
  out.resize(k.len);
  return out;
}

}  // namespace rlxi::test
