#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "rlxi/extract.hpp"
#include "rlxi/gen.hpp"
#include "rlxi/index.hpp"
#include "rlxi/io.hpp"
#include "rlxi/periods.hpp"
#include "rlxi/query.hpp"
#include "rlxi/signature.hpp"

using namespace rlxi;
using rlxi::test::xkey_string;
using rlxi::test::ykey_string;

namespace {

// shorter-string-first comparison used for rank order.
bool content_less(const std::string& a, const std::string& b) { return a < b; }

std::uint64_t expected_main_points(const Index& idx) {
  std::uint64_t total = 0;
  const Grammar& g = idx.grammar;
  for (std::size_t i = 0; i < g.num_rules(); ++i) {
    Symbol s = g.rule_symbol(i);
    if (!idx.model.reachable(s)) continue;
    const Rule& r = g.rule(s);
    total += r.is_run() ? 2 : r.rhs.size() - 1;
  }
  return total;
}

}  // namespace

TEST_CASE("fixture index shape") {
  Grammar g = rlxi::test::dna_grammar();
  Index idx = build_index(g);
  CHECK(idx.n == 146);
  CHECK(idx.main.size() == 24);
  CHECK(idx.main.size() == expected_main_points(idx));
  CHECK(idx.loci.size() == idx.main.size());
  CHECK(idx.families.size() == 3);
  CHECK(idx.key_lengths == std::vector<std::uint64_t>{1, 2, 4});

  std::size_t child = 0, null = 0, run = 0;
  for (const auto& l : idx.loci) {
    if (l.kind == Locus::Kind::Child) ++child;
    if (l.kind == Locus::Kind::Null) ++null;
    if (l.kind == Locus::Kind::Run) ++run;
  }
  CHECK(child == 14);
  CHECK(null == 5);
  CHECK(run == 5);
}

TEST_CASE("fixture point weights by kind") {
  Grammar g = rlxi::test::dna_grammar();
  Index idx = build_index(g);

  std::map<std::string, std::uint64_t> type1;
  for (std::uint32_t id = 0; id < idx.main.size(); ++id) {
    const Locus& l = idx.loci[id];
    std::uint64_t w = idx.main.point(id).w[0];
    if (l.kind == Locus::Kind::Null) {
      type1[g.name(l.head)] = w;
    } else if (l.kind == Locus::Kind::Run) {
      CHECK(w == 0);
    } else {
      CHECK(w == idx.model.multiplicity(l.head));
    }
  }
  std::map<std::string, std::uint64_t> want = {
      {"X2", 15}, {"X7", 3}, {"X8", 3}, {"X9", 4}, {"X11", 3}};
  CHECK(type1 == want);
}

TEST_CASE("fixture periodic families") {
  Grammar g = rlxi::test::dna_grammar();
  Index idx = build_index(g);
  REQUIRE(idx.families.size() == 3);

  // Ordered by key content: "c", "cg", "cgta".
  CHECK(idx.families[0].rho == 1);
  CHECK(idx.families[1].rho == 2);
  CHECK(idx.families[2].rho == 4);
  CHECK(extract(g, idx.families[0].rep, 1, 1) == "c");
  CHECK(extract(g, idx.families[1].rep, 1, 2) == "cg");
  CHECK(extract(g, idx.families[2].rep, 1, 4) == "cgta");

  const PeriodicFamily& f = idx.families[2];
  CHECK(f.row_lens == std::vector<std::uint64_t>{4, 8, 20});
  CHECK(f.col_pows == std::vector<std::uint64_t>{4, 8, 20});
  REQUIRE(f.grid.size() == 3);
  CHECK(f.grid.payloads() == 4);

  // (c, cs, cbeta, cs') per rule, at its (|B|, s') cell.
  std::map<std::string, std::array<std::uint64_t, 4>> got;
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> cell;
  for (std::uint32_t id = 0; id < f.grid.size(); ++id) {
    const GridPoint& p = f.grid.point(id);
    got[g.name(f.heads[id])] = p.w;
    cell[g.name(f.heads[id])] = {f.row_lens[p.x - 1], f.col_pows[p.y - 1]};
  }
  CHECK(got["X2"] == std::array<std::uint64_t, 4>{5, 20, 5, 20});
  CHECK(got["X7"] == std::array<std::uint64_t, 4>{1, 4, 2, 8});
  CHECK(got["X11"] == std::array<std::uint64_t, 4>{1, 4, 5, 20});
  CHECK(cell["X2"] == std::pair<std::uint64_t, std::uint64_t>{4, 4});
  CHECK(cell["X7"] == std::pair<std::uint64_t, std::uint64_t>{8, 8});
  CHECK(cell["X11"] == std::pair<std::uint64_t, std::uint64_t>{20, 20});

  // Rows |B| in {4, 8}, every column: the straddling-credit sub-rectangle.
  auto sums = f.grid.sum(1, 2, 1, 3);
  CHECK(sums[0] == 6);
  CHECK(sums[3] == 28);

  std::uint64_t small = idx.families[0].grid.size() + idx.families[1].grid.size();
  CHECK(small == 2);
}

TEST_CASE("family keys are verified signatures and pairwise distinct") {
  Grammar g = rlxi::test::dna_grammar();
  Index idx = build_index(g);
  std::vector<std::uint64_t> kappas;
  for (std::uint32_t fi = 0; fi < idx.families.size(); ++fi) {
    const PeriodicFamily& f = idx.families[fi];
    std::string key = extract(g, f.rep, 1, f.rho);
    CHECK(shortest_period(key + key) == f.rho);  // keys are primitive
    CHECK(f.kappa == signature_of(key, idx.scheme));
    REQUIRE(idx.by_kappa.count(f.kappa));
    CHECK(idx.by_kappa.at(f.kappa) == fi);
    kappas.push_back(f.kappa);
    CHECK(std::count(idx.key_lengths.begin(), idx.key_lengths.end(), f.rho) == 1);
  }
  std::sort(kappas.begin(), kappas.end());
  CHECK(std::adjacent_find(kappas.begin(), kappas.end()) == kappas.end());
}

TEST_CASE("rank tables are strictly sorted by content") {
  Grammar g = rlxi::test::dna_grammar();
  Index idx = build_index(g);
  for (std::size_t i = 1; i < idx.xkeys.size(); ++i)
    CHECK(content_less(xkey_string(idx, idx.xkeys[i - 1]), xkey_string(idx, idx.xkeys[i])));
  for (std::size_t i = 1; i < idx.ykeys.size(); ++i)
    CHECK(content_less(ykey_string(idx, idx.ykeys[i - 1]), ykey_string(idx, idx.ykeys[i])));

  // "cg" sorts before the longer "cgc..." and "cgta..." entries it prefixes.
  std::vector<std::string> ys;
  for (const auto& k : idx.ykeys) ys.push_back(ykey_string(idx, k));
  auto cg = std::find(ys.begin(), ys.end(), "cg");
  REQUIRE(cg != ys.end());
  std::size_t longer = 0;
  for (auto it = ys.begin(); it != ys.end(); ++it)
    if (it->size() > 2 && it->compare(0, 2, "cg") == 0) {
      ++longer;
      CHECK(it > cg);
    }
  CHECK(longer > 0);
}

TEST_CASE("transformed rules tile their expansions") {
  Grammar g = rlxi::test::dna_grammar();
  Index idx = build_index(g);
  for (const auto& f : idx.families) {
    std::string key = extract(g, f.rep, 1, f.rho);
    for (std::uint32_t id = 0; id < f.grid.size(); ++id) {
      Symbol head = f.heads[id];
      const Rule& r = g.rule(head);
      REQUIRE(r.is_run());
      std::uint64_t blen = g.length(r.base);
      CHECK(blen % f.rho == 0);  // the key length divides |B|
      std::uint64_t spow = (blen / f.rho) * r.power;
      CHECK(f.rho * spow == g.length(head));
      std::string full = extract(g, head, 1, g.length(head));
      std::string tiled;
      while (tiled.size() < full.size()) tiled += key;
      CHECK(tiled == full);
    }
  }
}

TEST_CASE("builds are deterministic under a seed") {
  Grammar g = rlxi::test::dna_grammar();
  Index a = build_index(g, 0);
  Index b = build_index(g, 0);
  CHECK(serialize_index(a) == serialize_index(b));

  Index c = build_index(g, 99);
  CHECK(c.scheme.base != a.scheme.base);
  CHECK(c.main.size() == a.main.size());
  CHECK(c.families.size() == a.families.size());
  CHECK(count(c, "acgtacgtac") == count(a, "acgtacgtac"));
}

TEST_CASE("unreachable rules contribute no points") {
  Grammar g = Grammar::from_text(
      "start S\n"
      "S -> B^3\n"
      "B -> 'a' 'b'\n"
      "Z -> 'x' 'y'\n");
  Index idx = build_index(g);
  Symbol z = g.symbol_named("Z");
  REQUIRE(z != kNoSymbol);
  CHECK(!idx.model.reachable(z));
  CHECK(idx.main.size() == expected_main_points(idx));
  for (const auto& l : idx.loci) CHECK(l.head != z);
  CHECK(count(idx, "ab") == 3);
  CHECK(count(idx, "x") == 0);
}

TEST_CASE("census holds on generated grammars") {
  for (std::uint64_t seed = 60; seed < 80; ++seed) {
    GenParams params;
    params.max_n = 2000;
    Grammar g = gen_grammar(seed, params);
    Index idx = build_index(g);
    CHECK(idx.main.size() == expected_main_points(idx));
    CHECK(idx.loci.size() == idx.main.size());
    for (const auto& f : idx.families) {
      CHECK(std::is_sorted(f.row_lens.begin(), f.row_lens.end()));
      CHECK(std::is_sorted(f.col_pows.begin(), f.col_pows.end()));
      CHECK(f.heads.size() == f.grid.size());
      CHECK(f.grid.nx() == f.row_lens.size());
      CHECK(f.grid.ny() == f.col_pows.size());
    }
  }
}
