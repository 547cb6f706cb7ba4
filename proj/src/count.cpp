#include <algorithm>

#include "rlxi/extract.hpp"
#include "rlxi/periods.hpp"
#include "rlxi/query.hpp"

namespace rlxi {

namespace {

// -1 / 0 / +1 for universe string vs query, where 0 means the query is a
// prefix of the universe string (a universe proper prefix orders before).
template <typename CharAt>
int prefix_compare(CharAt&& at, std::uint64_t ulen, std::string_view q) {
  std::uint64_t ml = std::min<std::uint64_t>(ulen, q.size());
  for (std::uint64_t j = 1; j <= ml; ++j) {
    unsigned char cu = at(j);
    unsigned char cq = static_cast<unsigned char>(q[j - 1]);
    if (cu != cq) return cu < cq ? -1 : 1;
  }
  return ulen >= q.size() ? 0 : -1;
}

template <typename Cmp>
RankRange rank_range(std::uint32_t universe, Cmp&& cmp) {
  // cmp(r) compares the rank-r string against the query.
  std::uint32_t lo = 1, hi = universe + 1;
  while (lo < hi) {
    std::uint32_t mid = lo + (hi - lo) / 2;
    if (cmp(mid) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  std::uint32_t first = lo;
  hi = universe + 1;
  while (lo < hi) {
    std::uint32_t mid = lo + (hi - lo) / 2;
    if (cmp(mid) <= 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return {first, lo - 1};
}

}  // namespace

RankRange x_range(const Index& idx, std::string_view p, std::uint64_t q) {
  return rank_range(static_cast<std::uint32_t>(idx.xkeys.size()), [&](std::uint32_t r) {
    const XKey& k = idx.xkeys[r - 1];
    auto at = [&](std::uint64_t j) { return symbol_at(idx.grammar, k.sym, k.len - j + 1); };
    // query = rev(p[1..q])
    std::uint64_t ml = std::min<std::uint64_t>(k.len, q);
    for (std::uint64_t j = 1; j <= ml; ++j) {
      unsigned char cu = at(j);
      unsigned char cq = static_cast<unsigned char>(p[q - j]);
      if (cu != cq) return cu < cq ? -1 : 1;
    }
    return k.len >= q ? 0 : -1;
  });
}

RankRange y_range(const Index& idx, std::string_view suffix) {
  return rank_range(static_cast<std::uint32_t>(idx.ykeys.size()), [&](std::uint32_t r) {
    const YKey& k = idx.ykeys[r - 1];
    if (k.kind == YKey::Kind::RuleSuffix) {
      auto at = [&](std::uint64_t j) { return symbol_at(idx.grammar, k.sym, k.off + j); };
      return prefix_compare(at, k.len, suffix);
    }
    std::uint64_t blen = idx.grammar.length(k.sym);
    auto at = [&](std::uint64_t j) {
      return symbol_at(idx.grammar, k.sym, (j - 1) % blen + 1);
    };
    return prefix_compare(at, k.len, suffix);
  });
}

namespace {

struct PassResult {
  std::uint64_t add = 0, sub = 0;
};

// Straddling-occurrence credit for one (family, q): alignments whose match
// spans at least two copy boundaries, minus the single-boundary overlap the
// main grid already counted.
PassResult family_pass(const PeriodicFamily& fam, std::uint64_t m, std::uint64_t q) {
  PassResult out;
  std::uint64_t rho = fam.rho;
  std::uint64_t rem = m - q;                // suffix length right of the cut
  std::uint64_t M = (rem + rho - 1) / rho;  // copies the suffix touches
  std::uint64_t row_cap = m - q - 1;        // need |B| < |suffix| to cross twice

  const auto& rows = fam.row_lens;
  const auto& cols = fam.col_pows;
  std::uint32_t rhi = static_cast<std::uint32_t>(
      std::upper_bound(rows.begin(), rows.end(), row_cap) - rows.begin());
  if (rhi == 0) return out;

  std::uint32_t clo = static_cast<std::uint32_t>(
      std::lower_bound(cols.begin(), cols.end(), M + 1) - cols.begin() + 1);
  if (clo <= cols.size()) {
    auto s = fam.grid.sum(1, rhi, clo, static_cast<std::uint32_t>(cols.size()));
    // sum of (s' - M) * c, each term positive on these columns
    unsigned __int128 add = (unsigned __int128)s[3] - (unsigned __int128)M * s[0];
    if (add > ~std::uint64_t(0)) raise(ErrorCode::Overflow, "alignment credit overflow");
    out.add = static_cast<std::uint64_t>(add);
  }

  std::uint64_t row_floor = rho * ((M + 1 + 1) / 2);  // beta >= ceil((M+1)/2)
  std::uint32_t rlo = static_cast<std::uint32_t>(
      std::lower_bound(rows.begin(), rows.end(), row_floor) - rows.begin() + 1);
  if (rlo <= rhi) {
    auto s = fam.grid.sum(rlo, rhi, 1, static_cast<std::uint32_t>(cols.size()));
    // sum of c * (s - 1) * (2 beta - M), each term positive on these rows
    unsigned __int128 gain = 2 * (unsigned __int128)s[3] + (unsigned __int128)M * s[0];
    unsigned __int128 cost = 2 * (unsigned __int128)s[2] + (unsigned __int128)M * s[1];
    if (gain < cost) raise(ErrorCode::Malformed, "internal: negative overlap correction");
    unsigned __int128 sub = gain - cost;
    if (sub > ~std::uint64_t(0)) raise(ErrorCode::Overflow, "overlap correction overflow");
    out.sub = static_cast<std::uint64_t>(sub);
  }
  return out;
}

template <typename CutSink, typename PassSink>
std::uint64_t count_core(const Index& idx, std::string_view p, CutSink&& on_cut,
                         PassSink&& on_pass) {
  std::uint64_t m = p.size();
  __int128 total = 0;
  for (std::uint64_t q = 1; q < m; ++q) {
    RankRange xr = x_range(idx, p, q);
    RankRange yr = xr.empty() ? RankRange{} : y_range(idx, p.substr(q));
    on_cut(q, xr, yr);
    if (xr.empty() || yr.empty()) continue;
    total += idx.main.sum(xr.lo, xr.hi, yr.lo, yr.hi)[0];
  }

  if (!idx.families.empty() && m >= 2) {
    PrefixSignatures sigs(p, idx.scheme);
    for (std::uint64_t rho : all_periods(p)) {
      if (rho > m - 1) break;
      if (!std::binary_search(idx.key_lengths.begin(), idx.key_lengths.end(), rho)) continue;
      std::uint64_t qmax = std::min(rho, m - rho);
      for (std::uint64_t q = 1; q <= qmax; ++q) {
        auto it = idx.by_kappa.find(sigs.substring(q + 1, q + rho));
        if (it == idx.by_kappa.end()) continue;
        const PeriodicFamily& fam = idx.families[it->second];
        if (fam.rho != rho) continue;
        bool match = true;
        for (std::uint64_t j = 1; j <= rho && match; ++j)
          match = symbol_at(idx.grammar, fam.rep, j) ==
                  static_cast<unsigned char>(p[q + j - 1]);
        if (!match) continue;  // signature collision, treat as absent
        PassResult r = family_pass(fam, m, q);
        on_pass(rho, q, r);
        total += r.add;
        total -= r.sub;
      }
    }
  }
  if (total < 0) raise(ErrorCode::Malformed, "internal: negative occurrence count");
  if (total > (__int128)~std::uint64_t(0))
    raise(ErrorCode::Overflow, "count exceeds 64 bits");
  return static_cast<std::uint64_t>(total);
}

}  // namespace

std::uint64_t count(const Index& idx, std::string_view p) {
  if (p.empty()) raise(ErrorCode::EmptyString, "empty pattern");
  if (p.size() == 1)
    return idx.model.occ1(static_cast<unsigned char>(p[0]));
  if (p.size() > idx.n) return 0;
  return count_core(idx, p, [](auto&&...) {}, [](auto&&...) {});
}

CountBreakdown count_debug(const Index& idx, std::string_view p) {
  CountBreakdown out;
  if (p.empty()) raise(ErrorCode::EmptyString, "empty pattern");
  if (p.size() == 1) {
    out.single = idx.model.occ1(static_cast<unsigned char>(p[0]));
    out.total = out.single;
    return out;
  }
  if (p.size() > idx.n) return out;
  out.total = count_core(
      idx, p,
      [&](std::uint64_t q, RankRange xr, RankRange yr) {
        CountBreakdown::Cut cut;
        cut.q = q;
        if (!xr.empty() && !yr.empty())
          idx.main.report(xr.lo, xr.hi, yr.lo, yr.hi, [&](std::uint32_t id) {
            std::uint64_t w = idx.main.point(id).w[0];
            if (idx.loci[id].kind == Locus::Kind::Child)
              cut.child_sum += w;
            else
              cut.run_sum += w;
          });
        out.cuts.push_back(cut);
      },
      [&](std::uint64_t rho, std::uint64_t q, PassResult r) {
        out.passes.push_back({rho, q, r.add, r.sub});
      });
  return out;
}

}  // namespace rlxi
