#include <algorithm>
#include <cstring>
#include <map>
#include <set>

#include "rlxi/extract.hpp"
#include "rlxi/index.hpp"
#include "rlxi/periods.hpp"

namespace rlxi {

namespace {

// A grid point before rank-space reduction: coordinates are text slices
// (1-based starts; x into the reversed text, y into the text).
struct RawPoint {
  std::uint64_t xstart = 0, xlen = 0;
  std::uint64_t ystart = 0, ylen = 0;
  std::uint64_t weight = 0;
  Locus locus{};
  Symbol xsym = kNoSymbol;
  YKey ykey{};
  std::uint32_t rule_idx = 0, child_idx = 0;
};

int compare_slices(const std::string& buf, std::uint64_t astart, std::uint64_t alen,
                   std::uint64_t bstart, std::uint64_t blen) {
  std::uint64_t ml = std::min(alen, blen);
  int r = std::memcmp(buf.data() + astart - 1, buf.data() + bstart - 1, ml);
  if (r != 0) return r < 0 ? -1 : 1;
  if (alen != blen) return alen < blen ? -1 : 1;
  return 0;
}

struct SliceLess {
  const std::string* buf;
  bool operator()(const std::pair<std::uint64_t, std::uint64_t>& a,
                  const std::pair<std::uint64_t, std::uint64_t>& b) const {
    return compare_slices(*buf, a.first, a.second, b.first, b.second) < 0;
  }
};

}  // namespace

Index build_index(const Grammar& g, std::uint64_t seed, std::uint64_t max_bytes) {
  Index idx(g, OccurrenceModel(g));
  const Grammar& gr = idx.grammar;
  idx.n = gr.text_length();
  std::string T = decompress(gr, max_bytes);
  std::string RT(T.rbegin(), T.rend());
  const std::uint64_t n = idx.n;

  // First parse-tree occurrence of every reachable symbol.
  std::vector<std::uint64_t> pos(kFirstNonterminal + gr.num_rules(), 0);
  {
    std::vector<Symbol> stack;
    pos[gr.start()] = 1;
    stack.push_back(gr.start());
    while (!stack.empty()) {
      Symbol s = stack.back();
      stack.pop_back();
      if (is_terminal(s)) continue;
      const Rule& r = gr.rule(s);
      auto place = [&](Symbol c, std::uint64_t at) {
        if (pos[c] == 0) {
          pos[c] = at;
          stack.push_back(c);
        }
      };
      if (r.is_run()) {
        place(r.base, pos[s]);
      } else {
        std::uint64_t off = 0;
        for (Symbol c : r.rhs) {
          place(c, pos[s] + off);
          off += gr.length(c);
        }
      }
    }
  }

  auto rev_start = [&](std::uint64_t tstart, std::uint64_t len) {
    return n - tstart - len + 2;  // slice of RT holding the reversal
  };

  std::vector<RawPoint> raw;
  std::uint64_t expected = 0;
  for (std::size_t i = 0; i < gr.num_rules(); ++i) {
    Symbol a = gr.rule_symbol(i);
    if (!idx.model.reachable(a)) continue;
    const Rule& r = gr.rule(a);
    std::uint64_t c = idx.model.multiplicity(a);
    if (r.is_run()) {
      expected += 2;
      std::uint64_t blen = gr.length(r.base);
      RawPoint t1;
      t1.xsym = r.base;
      t1.xlen = blen;
      t1.xstart = rev_start(pos[r.base], blen);
      t1.ykey = {YKey::Kind::Power, r.base, 0, blen};
      t1.ystart = pos[r.base];
      t1.ylen = blen;
      t1.weight = c * (r.power - 1);
      t1.locus = {Locus::Kind::Null, a, 0};
      t1.rule_idx = static_cast<std::uint32_t>(i);
      t1.child_idx = 0;
      raw.push_back(t1);

      RawPoint lp;
      lp.xsym = r.base;
      lp.xlen = blen;
      lp.xstart = rev_start(pos[r.base], blen);
      lp.ykey = {YKey::Kind::Power, r.base, 0, (r.power - 1) * blen};
      lp.ystart = pos[a] + blen;
      lp.ylen = (r.power - 1) * blen;
      lp.weight = 0;
      lp.locus = {Locus::Kind::Run, a, 0};
      lp.rule_idx = static_cast<std::uint32_t>(i);
      lp.child_idx = 1;
      raw.push_back(lp);
    } else {
      std::uint64_t alen = gr.length(a);
      std::uint64_t off = 0;
      for (std::size_t ch = 0; ch + 1 < r.rhs.size(); ++ch) {
        ++expected;
        Symbol x = r.rhs[ch];
        std::uint64_t xlen = gr.length(x);
        off += xlen;
        RawPoint p;
        p.xsym = x;
        p.xlen = xlen;
        p.xstart = rev_start(pos[x], xlen);
        p.ykey = {YKey::Kind::RuleSuffix, a, off, alen - off};
        p.ystart = pos[a] + off;
        p.ylen = alen - off;
        p.weight = c;
        p.locus = {Locus::Kind::Child, a, off};
        p.rule_idx = static_cast<std::uint32_t>(i);
        p.child_idx = static_cast<std::uint32_t>(ch);
        raw.push_back(p);
      }
    }
  }
  if (raw.size() != expected)
    raise(ErrorCode::Malformed, "internal: point census does not match rule shapes");

  // Rank-space reduction: sort by slice content, ties by (rule, child)
  // so equal strings take one rank deterministically.
  std::vector<std::uint32_t> order(raw.size());
  std::vector<std::uint32_t> xrank(raw.size(), 0), yrank(raw.size(), 0);
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;

  auto rank_axis = [&](const std::string& buf, bool xaxis, auto key_of) {
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      const RawPoint &pa = raw[a], &pb = raw[b];
      std::uint64_t as = xaxis ? pa.xstart : pa.ystart, al = xaxis ? pa.xlen : pa.ylen;
      std::uint64_t bs = xaxis ? pb.xstart : pb.ystart, bl = xaxis ? pb.xlen : pb.ylen;
      int c2 = compare_slices(buf, as, al, bs, bl);
      if (c2 != 0) return c2 < 0;
      if (pa.rule_idx != pb.rule_idx) return pa.rule_idx < pb.rule_idx;
      return pa.child_idx < pb.child_idx;
    });
    std::uint32_t rank = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const RawPoint& p = raw[order[k]];
      bool fresh = k == 0;
      if (!fresh) {
        const RawPoint& q = raw[order[k - 1]];
        std::uint64_t as = xaxis ? q.xstart : q.ystart, al = xaxis ? q.xlen : q.ylen;
        std::uint64_t bs = xaxis ? p.xstart : p.ystart, bl = xaxis ? p.xlen : p.ylen;
        fresh = compare_slices(buf, as, al, bs, bl) != 0;
      }
      if (fresh) {
        ++rank;
        key_of(p);
      }
      (xaxis ? xrank : yrank)[order[k]] = rank;
    }
  };
  rank_axis(RT, true, [&](const RawPoint& p) { idx.xkeys.push_back({p.xsym, p.xlen}); });
  rank_axis(T, false, [&](const RawPoint& p) { idx.ykeys.push_back(p.ykey); });

  std::vector<GridPoint> pts(raw.size());
  idx.loci.resize(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    pts[k].x = xrank[k];
    pts[k].y = yrank[k];
    pts[k].w[0] = raw[k].weight;
    idx.loci[k] = raw[k].locus;
  }
  idx.main = WeightedGrid(static_cast<std::uint32_t>(idx.xkeys.size()),
                          static_cast<std::uint32_t>(idx.ykeys.size()), std::move(pts), 1);

  // Run-length rules keyed by the primitive period of their expansion.
  struct Member {
    Symbol head;
    std::uint64_t blen, s, beta, spow, c;
  };
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<Member>, SliceLess> groups{
      SliceLess{&T}};
  for (std::size_t i = 0; i < gr.num_rules(); ++i) {
    Symbol a = gr.rule_symbol(i);
    if (!idx.model.reachable(a)) continue;
    const Rule& r = gr.rule(a);
    if (!r.is_run()) continue;
    std::uint64_t blen = gr.length(r.base);
    std::string bb = T.substr(pos[r.base] - 1, blen);
    bb += bb;
    std::uint64_t rho = shortest_period(bb);  // = p(exp(B)^s) for s >= 2
    if (blen % rho != 0)
      raise(ErrorCode::Malformed, "internal: primitive period fails to divide |B|");
    std::uint64_t beta = blen / rho;
    groups[{pos[r.base], rho}].push_back(
        {a, blen, r.power, beta, r.power * beta, idx.model.multiplicity(a)});
  }

  std::set<std::uint64_t> rhos;
  for (auto& [key, members] : groups) {
    PeriodicFamily fam;
    fam.rho = key.second;
    fam.rep = members[0].head;
    rhos.insert(fam.rho);
    std::set<std::uint64_t> rows, cols;
    for (const Member& m : members) {
      rows.insert(m.blen);
      cols.insert(m.spow);
    }
    fam.row_lens.assign(rows.begin(), rows.end());
    fam.col_pows.assign(cols.begin(), cols.end());
    std::vector<GridPoint> fpts;
    for (const Member& m : members) {
      GridPoint p;
      p.x = static_cast<std::uint32_t>(
          std::lower_bound(fam.row_lens.begin(), fam.row_lens.end(), m.blen) -
          fam.row_lens.begin() + 1);
      p.y = static_cast<std::uint32_t>(
          std::lower_bound(fam.col_pows.begin(), fam.col_pows.end(), m.spow) -
          fam.col_pows.begin() + 1);
      p.w = {m.c, m.c * m.s, m.c * m.beta, m.c * m.spow};
      fpts.push_back(p);
      fam.heads.push_back(m.head);
    }
    fam.grid = WeightedGrid(static_cast<std::uint32_t>(fam.row_lens.size()),
                            static_cast<std::uint32_t>(fam.col_pows.size()), std::move(fpts), 4);
    idx.families.push_back(std::move(fam));
  }
  idx.key_lengths.assign(rhos.begin(), rhos.end());

  // Distinct signatures across every family key, or rebase and retry.
  bool keyed = false;
  for (std::uint64_t attempt = 0; attempt < 16 && !keyed; ++attempt) {
    idx.scheme = SignatureScheme::from_seed(seed, attempt);
    std::set<std::uint64_t> seen;
    keyed = true;
    for (PeriodicFamily& fam : idx.families) {
      std::uint64_t start = pos[gr.rule(fam.rep).base];
      fam.kappa = signature_of(
          std::string_view(T).substr(start - 1, fam.rho), idx.scheme);
      if (!seen.insert(fam.kappa).second) {
        keyed = false;
        break;
      }
    }
  }
  if (!keyed)
    raise(ErrorCode::SignatureCollision, "could not find collision-free key signatures");
  idx.by_kappa.clear();
  for (std::uint32_t i = 0; i < idx.families.size(); ++i)
    idx.by_kappa.emplace(idx.families[i].kappa, i);

  return idx;
}

}  // namespace rlxi
