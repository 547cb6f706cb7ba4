// Acceptance gate: one PASS/FAIL line per criterion, exit code = failures.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "rlxi/extract.hpp"
#include "rlxi/gen.hpp"
#include "rlxi/grammar.hpp"
#include "rlxi/grid.hpp"
#include "rlxi/index.hpp"
#include "rlxi/io.hpp"
#include "rlxi/oracle.hpp"
#include "rlxi/periods.hpp"
#include "rlxi/query.hpp"
#include "rlxi/signature.hpp"

#ifndef RLXI_TEST_DATA
#define RLXI_TEST_DATA "."
#endif

using namespace rlxi;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void expect(Outcome& o, bool cond, const std::string& what) {
  if (cond) return;
  o.ok = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return {};
  std::string out;
  char buf[65536];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
  std::fclose(f);
  return out;
}

Grammar fixture() {
  return Grammar::from_text(slurp(std::string(RLXI_TEST_DATA) + "/dna146.gram"));
}

std::string rep(std::string_view unit, std::size_t times) {
  std::string out;
  for (std::size_t i = 0; i < times; ++i) out += unit;
  return out;
}

// ---- criterion 1: structural tables of the running example -----------------

Outcome structural_tables() {
  Outcome o;
  Grammar g = fixture();
  Index idx = build_index(g);

  std::map<std::string, std::uint64_t> type1;
  for (std::uint32_t id = 0; id < idx.main.size(); ++id)
    if (idx.loci[id].kind == Locus::Kind::Null)
      type1[g.name(idx.loci[id].head)] = idx.main.point(id).w[0];
  std::map<std::string, std::uint64_t> type1_want = {
      {"X2", 15}, {"X7", 3}, {"X8", 3}, {"X9", 4}, {"X11", 3}};
  expect(o, type1 == type1_want, "run-length count-point weights");

  const PeriodicFamily* fam = nullptr;
  for (const auto& f : idx.families)
    if (f.rho == 4) fam = &f;
  expect(o, fam != nullptr, "no period-4 family");
  if (!fam) return o;
  expect(o, fam->row_lens == std::vector<std::uint64_t>{4, 8, 20}, "rows");
  expect(o, fam->col_pows == std::vector<std::uint64_t>{4, 8, 20}, "columns");
  std::map<std::string, std::array<std::uint64_t, 2>> cells, cells_want;
  for (std::uint32_t id = 0; id < fam->grid.size(); ++id) {
    const GridPoint& p = fam->grid.point(id);
    cells[g.name(fam->heads[id])] = {p.w[0], p.w[3]};
  }
  cells_want["X2"] = {5, 20};
  cells_want["X7"] = {1, 8};
  cells_want["X11"] = {1, 20};
  expect(o, cells == cells_want, "grid points (count, count*power)");
  return o;
}

// ---- criterion 2: behavioral walkthrough of the running example ------------

Outcome behavioral_example() {
  Outcome o;
  auto t0 = Clock::now();
  Grammar g = fixture();
  Index idx = build_index(g);
  std::string p = "acgtacgtac";

  expect(o, shortest_period(p) == 4, "p(P)");

  CountBreakdown bd = count_debug(idx, p);
  bool found_pass = false;
  for (const auto& pass : bd.passes)
    if (pass.rho == 4 && pass.q == 1) {
      found_pass = true;
      expect(o, pass.add == 10, "straddling-alignment credit at q=1");
      expect(o, pass.sub == 3, "overlap correction at q=1");
    }
  expect(o, found_pass, "no periodic pass at q=1");
  bool found_cut = false;
  for (const auto& cut : bd.cuts)
    if (cut.q == 1) {
      found_cut = true;
      expect(o, cut.run_sum == 3, "run-length main-grid sum at q=1");
    }
  expect(o, found_cut, "no cut record at q=1");

  std::string text = decompress(g);
  std::uint64_t want = naive_count(text, p);
  expect(o, want == 25, "oracle count");
  expect(o, bd.total == want, "count equals oracle");
  expect(o, count(idx, p) == want, "count()");
  expect(o, seconds_since(t0) < 1.0, "runtime under 1s");
  return o;
}

// ---- criterion 3: randomized oracle equivalence ----------------------------

Outcome oracle_suite() {
  Outcome o;
  auto t0 = Clock::now();
  int grammars = 0, nested = 0;
  std::uint64_t mismatches = 0;
  Rng rng(0x0c3);
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    GenParams params;  // n <= 5000, alphabet 4, half the rules run-length
    Grammar g = gen_grammar(seed, params);
    Index idx = build_index(g, seed);
    std::string text = decompress(g);
    ++grammars;

    for (const auto& f : idx.families)
      for (std::uint32_t id = 0; id < f.grid.size(); ++id)
        if (f.row_lens[f.grid.point(id).x - 1] / f.rho >= 2) {
          ++nested;
          goto counted;
        }
  counted:
    for (const auto& p : gen_patterns(text, seed ^ 0x5eed, 30, 64, &g)) {
      std::uint64_t c = count(idx, p);
      auto pos = locate(idx, p);
      if (c != naive_count(text, p)) ++mismatches;
      if (pos != naive_locate(text, p)) ++mismatches;
      if (pos.size() != c) ++mismatches;
    }
    for (int it = 0; it < 3; ++it) {
      std::uint64_t i = 1 + rng.below(text.size());
      std::uint64_t j = i - 1 + rng.below(text.size() - i + 2);
      if (extract(g, g.start(), i, j) != text.substr(i - 1, j - i + 1)) ++mismatches;
    }
  }
  expect(o, grammars == 300, "grammar count");
  expect(o, nested * 2 >= grammars,
         "nested run-length rules in " + std::to_string(nested) + "/300 grammars");
  expect(o, mismatches == 0, std::to_string(mismatches) + " mismatches");
  expect(o, seconds_since(t0) < 300.0, "suite under 5 minutes");
  return o;
}

// ---- criterion 4: unit-level property suites -------------------------------

std::uint64_t brute_period(std::string_view s) {
  for (std::uint64_t p = 1;; ++p)
    if (is_period(s, p)) return p;
}

Outcome property_suites() {
  Outcome o;

  std::uint64_t period_bad = 0;
  for (std::uint64_t len = 1; len <= 12; ++len)
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << len); ++bits) {
      std::string s(len, 'a');
      for (std::uint64_t i = 0; i < len; ++i)
        if (bits >> i & 1) s[i] = 'b';
      if (shortest_period(s) != brute_period(s)) ++period_bad;
    }
  expect(o, period_bad == 0, "shortest_period vs brute force");

  std::uint64_t rl_rules = 0, rl_bad = 0;
  Rng rng(0x0c4);
  for (std::uint64_t seed = 400; seed < 600; ++seed) {
    GenParams params;
    params.max_n = 2000;
    Grammar g = gen_grammar(seed, params);
    OccurrenceModel model(g);
    for (std::size_t i = 0; i < g.num_rules(); ++i) {
      Symbol a = g.rule_symbol(i);
      const Rule& r = g.rule(a);
      if (!r.is_run() || !model.reachable(a)) continue;
      ++rl_rules;
      std::uint64_t blen = g.length(r.base);
      std::uint64_t rho = period_of_power(g, r.base, r.power);
      if (blen % rho != 0) ++rl_bad;  // the period must divide |B|
      std::uint64_t spow = (blen / rho) * r.power;
      if (rho * spow != g.length(a)) ++rl_bad;
      std::string key = extract(g, a, 1, rho);
      if (shortest_period(key + key) != rho) ++rl_bad;  // primitive key
      std::uint64_t alen = g.length(a);
      if (alen <= 4096) {  // the key tiles the whole expansion
        if (rep(key, spow) != extract(g, a, 1, alen)) ++rl_bad;
      } else {
        for (int it = 0; it < 64; ++it) {
          std::uint64_t k = 1 + rng.below(alen);
          if (symbol_at(g, a, k) !=
              static_cast<unsigned char>(key[(k - 1) % rho]))
            ++rl_bad;
        }
      }
    }
  }
  expect(o, rl_rules > 100, "enough run-length rules generated");
  expect(o, rl_bad == 0, "transformed-rule identities");

  std::uint64_t window_bad = 0, window_hits = 0;
  for (std::uint64_t it = 0; window_hits < 10000; ++it) {
    std::uint64_t p = 1 + rng.below(8);
    std::string unit(p, 'a');
    for (auto& c : unit) c = static_cast<char>('a' + rng.below(2 + rng.below(2)));
    if (shortest_period(unit) != p) continue;
    std::string w = rep(unit, 2 + rng.below(5));
    std::uint64_t q = 1 + rng.below(std::min<std::uint64_t>(p, w.size() - p));
    std::uint64_t len = p + rng.below(w.size() - q - p + 1);
    std::string s = w.substr(q, len);
    ++window_hits;
    std::uint64_t r = shortest_period(s);
    bool ok = r == p ||
              (r < p && p % r != 0 && r + p > s.size() + std::gcd(r, p));
    if (!ok) ++window_bad;
  }
  expect(o, window_bad == 0, "window-period property");

  std::uint64_t grid_bad = 0;
  {
    std::vector<GridPoint> pts(300);
    for (auto& p : pts) {
      p.x = 1 + static_cast<std::uint32_t>(rng.below(80));
      p.y = 1 + static_cast<std::uint32_t>(rng.below(70));
      for (auto& w : p.w) w = rng.below(1 << 20);
    }
    WeightedGrid grid(80, 70, pts, 4);
    for (int it = 0; it < 1000; ++it) {
      std::uint32_t x1 = 1 + static_cast<std::uint32_t>(rng.below(80));
      std::uint32_t x2 = x1 + static_cast<std::uint32_t>(rng.below(80 - x1 + 1));
      std::uint32_t y1 = 1 + static_cast<std::uint32_t>(rng.below(70));
      std::uint32_t y2 = y1 + static_cast<std::uint32_t>(rng.below(70 - y1 + 1));
      std::array<std::uint64_t, kMaxPayloads> want{};
      for (const auto& p : pts)
        if (p.x >= x1 && p.x <= x2 && p.y >= y1 && p.y <= y2)
          for (unsigned c = 0; c < 4; ++c) want[c] += p.w[c];
      if (grid.sum(x1, x2, y1, y2) != want) ++grid_bad;
    }
  }
  expect(o, grid_bad == 0, "grid sums vs plain scan");

  std::uint64_t sig_bad = 0;
  {
    auto scheme = SignatureScheme::from_seed(123);
    std::string s(500, 'a');
    for (auto& c : s) c = static_cast<char>(rng.below(256));
    PrefixSignatures ps(s, scheme);
    for (int it = 0; it < 10000; ++it) {
      std::uint64_t i = 1 + rng.below(s.size());
      std::uint64_t j = i - 1 + rng.below(s.size() - i + 2);
      std::string_view sub = std::string_view(s).substr(i - 1, j - i + 1);
      if (ps.substring(i, j) != signature_of(sub, scheme)) ++sig_bad;
    }
  }
  expect(o, sig_bad == 0, "substring signatures");
  return o;
}

// ---- criterion 5: k-MEMs vs brute force ------------------------------------

Outcome mems_suite() {
  Outcome o;
  std::uint64_t bad = 0;
  for (std::uint64_t seed = 700; seed < 800; ++seed) {
    GenParams params;
    params.max_n = 1200;
    Grammar g = gen_grammar(seed, params);
    Index idx = build_index(g, seed);
    std::string text = decompress(g);
    auto pats = gen_patterns(text, seed + 31, 10, 32, &g);
    Rng rng(seed);
    for (const auto& p : pats) {
      std::uint64_t k = 1 + rng.below(6);
      auto got = k_mems(idx, p, k);
      auto want = naive_mems(text, p, k);
      bool same = got.size() == want.size();
      for (std::size_t i = 0; same && i < got.size(); ++i)
        same = got[i].i == want[i].i && got[i].j == want[i].j &&
               got[i].count == want[i].count;
      if (!same) ++bad;
    }
  }
  expect(o, bad == 0, std::to_string(bad) + " MEM mismatches");
  return o;
}

// ---- criterion 6: scale and query-time growth ------------------------------

Grammar big_grammar() {
  std::vector<Rule> rules;
  std::vector<std::string> names;
  auto seq = [&](std::string_view body) {
    Rule r;
    for (char c : body) r.rhs.push_back(terminal_symbol(c));
    rules.push_back(r);
    names.push_back("N" + std::to_string(names.size()));
    return kFirstNonterminal + static_cast<Symbol>(rules.size() - 1);
  };
  auto power = [&](Symbol base, std::uint64_t s) {
    Rule r;
    r.base = base;
    r.power = s;
    rules.push_back(r);
    names.push_back("N" + std::to_string(names.size()));
    return kFirstNonterminal + static_cast<Symbol>(rules.size() - 1);
  };
  Symbol a = seq("abcd");
  for (int i = 0; i < 17; ++i) a = power(a, 2);  // (abcd)^131072
  Symbol b = seq("ab");
  for (int i = 0; i < 11; ++i) b = power(b, 3);  // (ab)^177147
  Symbol c = seq("abc");
  for (int i = 0; i < 16; ++i) c = power(c, 2);  // (abc)^65536
  Symbol d = seq("dcba");
  Rule start;
  start.rhs = {a, b, c, d};
  rules.push_back(start);
  names.push_back("S");
  return Grammar::from_rules(rules, kFirstNonterminal + static_cast<Symbol>(rules.size() - 1),
                             names);
}

Outcome scale_suite() {
  Outcome o;
  Grammar g = big_grammar();
  expect(o, g.size_grl() <= 200, "g_rl <= 200 (have " + std::to_string(g.size_grl()) + ")");
  expect(o, g.text_length() >= 1000000, "n >= 1e6");

  auto t0 = Clock::now();
  Index idx = build_index(g);
  double build_s = seconds_since(t0);
  expect(o, build_s <= 5.0, "build took " + std::to_string(build_s) + "s");

  std::string text = decompress(g);
  std::string p64 = rep("abcd", 16);
  expect(o, count(idx, p64) == 131057, "64-char count value");
  expect(o, count(idx, p64) == naive_count(text, p64), "64-char count vs scan");
  std::string pab = rep("ab", 32);
  expect(o, count(idx, pab) == 177117, "straddling 64-char count value");
  expect(o, count(idx, pab) == naive_count(text, pab), "straddling count vs scan");

  auto timed = [&](const std::string& p) {
    count(idx, p);  // warm
    auto t1 = Clock::now();
    for (int it = 0; it < 100; ++it) count(idx, p);
    return seconds_since(t1) / 100;
  };
  double t8 = timed(rep("abcd", 2));
  double t16 = timed(rep("abcd", 4));
  double t32 = timed(rep("abcd", 8));
  double t64 = timed(p64);
  char buf[160];
  std::snprintf(buf, sizeof buf, "count times ms: m=8 %.3f, m=16 %.3f, m=32 %.3f, m=64 %.3f",
                t8 * 1e3, t16 * 1e3, t32 * 1e3, t64 * 1e3);
  std::printf("  %s\n", buf);
  expect(o, t64 <= 0.050, "64-char count under 50ms");
  // Doubling m may at worst quadruple the time; allow 2x slack plus a noise floor.
  expect(o, t16 <= 8 * t8 + 1e-4, "growth 8 -> 16");
  expect(o, t32 <= 8 * t16 + 1e-4, "growth 16 -> 32");
  expect(o, t64 <= 8 * t32 + 1e-4, "growth 32 -> 64");
  return o;
}

// ---- criterion 7: serialization --------------------------------------------

Outcome serialization_suite() {
  Outcome o;
  std::uint64_t bad = 0;
  for (std::uint64_t seed = 900; seed < 920; ++seed) {
    GenParams params;
    params.max_n = 1500;
    Grammar g = gen_grammar(seed, params);
    Index idx = build_index(g, seed);
    auto img = serialize_index(idx);
    Index back = deserialize_index(img.data(), img.size());
    std::string text = decompress(g);
    auto pats = gen_patterns(text, seed * 7 + 1, 60, 48, &g);
    for (const auto& p : pats) {
      if (count(idx, p) != count(back, p)) ++bad;
      if (locate(idx, p) != locate(back, p)) ++bad;
    }
    Rng rng(seed);
    for (int it = 0; it < 40; ++it) {
      std::uint64_t i = 1 + rng.below(text.size());
      std::uint64_t j = i - 1 + rng.below(text.size() - i + 2);
      if (extract(back.grammar, back.grammar.start(), i, j) !=
          text.substr(i - 1, j - i + 1))
        ++bad;
    }
  }
  expect(o, bad == 0, std::to_string(bad) + " reload divergences");

  auto code_of = [](auto&& fn) -> ErrorCode {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;  // sentinel: nothing thrown
  };
  Grammar g = fixture();
  auto img = serialize_index(build_index(g));
  auto bad_magic = img;
  bad_magic[0] = 'X';
  expect(o,
         code_of([&] { deserialize_index(bad_magic.data(), bad_magic.size()); }) ==
             ErrorCode::BadMagic,
         "bad magic");
  auto bad_version = img;
  bad_version[4] = 7;
  expect(o,
         code_of([&] { deserialize_index(bad_version.data(), bad_version.size()); }) ==
             ErrorCode::VersionMismatch,
         "version mismatch");
  auto flipped = img;
  flipped[img.size() / 2] ^= 1;
  expect(o,
         code_of([&] { deserialize_index(flipped.data(), flipped.size()); }) ==
             ErrorCode::ChecksumMismatch,
         "checksum mismatch");
  expect(o, code_of([&] { deserialize_index(img.data(), 40); }) == ErrorCode::Truncated,
         "truncation");
  auto longer = img;
  longer.push_back(0);
  expect(o,
         code_of([&] { deserialize_index(longer.data(), longer.size()); }) ==
             ErrorCode::Malformed,
         "trailing bytes");
  expect(o, code_of([&] { load_index("/nonexistent/nowhere.rlx"); }) == ErrorCode::IoError,
         "missing file");
  return o;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {"structural tables of the running example", structural_tables},
      {"behavioral walkthrough of the running example", behavioral_example},
      {"randomized oracle equivalence (300 grammars)", oracle_suite},
      {"unit-level property suites", property_suites},
      {"k-MEMs vs brute force (100 grammars)", mems_suite},
      {"scale: 1e6-char text, build and query budgets", scale_suite},
      {"serialization round trip and corruption handling", serialization_suite},
  };

  int failures = 0;
  int id = 0;
  for (const auto& e : entries) {
    ++id;
    Outcome o;
    double secs;
    try {
      auto t0 = Clock::now();
      o = e.fn();
      secs = seconds_since(t0);
    } catch (const std::exception& ex) {
      o.ok = false;
      o.detail = std::string("exception: ") + ex.what();
      secs = 0;
    }
    std::printf("criterion %d: %s  %s (%.2fs)%s%s\n", id, o.ok ? "PASS" : "FAIL",
                e.label, secs, o.detail.empty() ? "" : " -- ", o.detail.c_str());
    failures += !o.ok;
  }
  return failures;
}
