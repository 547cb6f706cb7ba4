#include <algorithm>
#include <unordered_map>

#include "rlxi/query.hpp"

namespace rlxi {

namespace {

// Text positions of every parse-tree occurrence of a symbol, found by
// walking mention lists up to the start symbol. Memoized per query.
class Occurrences {
 public:
  explicit Occurrences(const Index& idx) : idx_(idx) {}

  const std::vector<std::uint64_t>& of(Symbol s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    std::vector<std::uint64_t> out;
    if (s == idx_.grammar.start()) {
      out.push_back(1);
    } else {
      for (const auto& men : idx_.model.mentions(s)) {
        const auto& ups = of(men.head);
        for (std::uint64_t up : ups)
          for (std::uint64_t k = 0; k < men.count; ++k)
            out.push_back(up + men.offset + k * men.stride);
      }
    }
    return memo_.emplace(s, std::move(out)).first->second;
  }

 private:
  const Index& idx_;
  std::unordered_map<Symbol, std::vector<std::uint64_t>> memo_;
};

}  // namespace

std::vector<std::uint64_t> locate_raw(const Index& idx, std::string_view p) {
  if (p.empty()) raise(ErrorCode::EmptyString, "empty pattern");
  std::uint64_t m = p.size();
  std::vector<std::uint64_t> out;
  Occurrences occs(idx);

  if (m == 1) {
    Symbol t = terminal_symbol(static_cast<unsigned char>(p[0]));
    if (idx.model.reachable(t)) out = occs.of(t);
    return out;
  }
  if (m > idx.n) return out;

  for (std::uint64_t q = 1; q < m; ++q) {
    RankRange xr = x_range(idx, p, q);
    if (xr.empty()) continue;
    RankRange yr = y_range(idx, p.substr(q));
    if (yr.empty()) continue;
    idx.main.report(xr.lo, xr.hi, yr.lo, yr.hi, [&](std::uint32_t id) {
      const Locus& l = idx.loci[id];
      switch (l.kind) {
        case Locus::Kind::Null:
          break;  // counting weight only, located via the run payload
        case Locus::Kind::Child: {
          std::uint64_t local = l.off - q + 1;
          for (std::uint64_t up : occs.of(l.head)) out.push_back(up + local - 1);
          break;
        }
        case Locus::Kind::Run: {
          const Rule& r = idx.grammar.rule(l.head);
          std::uint64_t blen = idx.grammar.length(r.base);
          std::uint64_t copies = (m - q + blen - 1) / blen;
          std::uint64_t t = r.power - copies;  // y-condition makes this >= 1
          const auto& ups = occs.of(l.head);
          for (std::uint64_t k = 1; k <= t; ++k) {
            std::uint64_t local = k * blen - q + 1;
            for (std::uint64_t up : ups) out.push_back(up + local - 1);
          }
          break;
        }
      }
    });
  }
  return out;
}

std::vector<std::uint64_t> locate(const Index& idx, std::string_view p) {
  std::vector<std::uint64_t> out = locate_raw(idx, p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace rlxi
