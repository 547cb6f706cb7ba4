#include "rlxi/extract.hpp"

#include "rlxi/grammar.hpp"

namespace rlxi {

namespace {

void extract_into(const Grammar& g, Symbol sym, std::uint64_t i, std::uint64_t j,
                  std::string& out) {
  if (is_terminal(sym)) {
    out += char(terminal_byte(sym));
    return;
  }
  const Rule& r = g.rule(sym);
  if (r.is_run()) {
    std::uint64_t blen = g.length(r.base);
    // Whole copies between the clipped ends are taken verbatim.
    std::uint64_t first = (i - 1) / blen;       // 0-based copy holding position i
    std::uint64_t last = (j - 1) / blen;
    for (std::uint64_t k = first; k <= last; ++k) {
      std::uint64_t lo = k == first ? i - first * blen : 1;
      std::uint64_t hi = k == last ? j - last * blen : blen;
      std::uint64_t cut = out.size();
      if (k > first && k < last && k > first + 1) {
        // Identical to the previous full copy; reuse the bytes just written.
        out.append(out, cut - blen, blen);
        continue;
      }
      extract_into(g, r.base, lo, hi, out);
    }
    return;
  }
  std::uint64_t off = 0;
  for (Symbol c : r.rhs) {
    std::uint64_t len = g.length(c);
    std::uint64_t lo = off + 1, hi = off + len;
    off += len;
    if (hi < i) continue;
    if (lo > j) break;
    extract_into(g, c, std::max(i, lo) - (lo - 1), std::min(j, hi) - (lo - 1), out);
  }
}

}  // namespace

std::string extract(const Grammar& g, Symbol sym, std::uint64_t i, std::uint64_t j) {
  std::uint64_t n = g.length(sym);
  if (i > j) return {};
  if (i < 1 || j > n) raise(ErrorCode::OutOfRange, "extract range outside expansion");
  std::string out;
  out.reserve(j - i + 1);
  extract_into(g, sym, i, j, out);
  return out;
}

unsigned char symbol_at(const Grammar& g, Symbol sym, std::uint64_t k) {
  if (k < 1 || k > g.length(sym)) raise(ErrorCode::OutOfRange, "position outside expansion");
  Symbol cur = sym;
  while (!is_terminal(cur)) {
    const Rule& r = g.rule(cur);
    if (r.is_run()) {
      std::uint64_t blen = g.length(r.base);
      k = (k - 1) % blen + 1;
      cur = r.base;
      continue;
    }
    for (Symbol c : r.rhs) {
      std::uint64_t len = g.length(c);
      if (k <= len) {
        cur = c;
        break;
      }
      k -= len;
    }
  }
  return terminal_byte(cur);
}

std::string decompress(const Grammar& g, std::uint64_t max_bytes) {
  std::uint64_t n = g.text_length();
  if (n > max_bytes)
    raise(ErrorCode::TooLarge,
          "expansion is " + std::to_string(n) + " bytes, limit " + std::to_string(max_bytes));
  return extract(g, g.start(), 1, n);
}

}  // namespace rlxi
