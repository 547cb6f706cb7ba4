#include "rlxi/gen.hpp"

#include <algorithm>
#include <set>

#include "rlxi/extract.hpp"
#include "rlxi/grammar.hpp"

namespace rlxi {

namespace {

unsigned char alpha_byte(unsigned i) {
  return i < 26 ? static_cast<unsigned char>('a' + i) : static_cast<unsigned char>(i);
}

struct Builder {
  std::vector<Rule> rules;
  std::vector<std::uint64_t> lens;  // per rule
  std::uint64_t max_n;

  std::uint64_t len_of(Symbol s) const {
    return is_terminal(s) ? 1 : lens[s - kFirstNonterminal];
  }
  Symbol add(Rule r, std::uint64_t len) {
    rules.push_back(std::move(r));
    lens.push_back(len);
    return kFirstNonterminal + static_cast<Symbol>(rules.size() - 1);
  }
};

}  // namespace

Grammar gen_grammar(std::uint64_t seed, const GenParams& p) {
  if (p.max_rules < 1) raise(ErrorCode::ParamError, "max_rules must be at least 1");
  if (p.alphabet < 1 || p.alphabet > 256)
    raise(ErrorCode::ParamError, "alphabet size must be in [1..256]");
  if (p.rl_bias < 0.0 || p.rl_bias > 1.0)
    raise(ErrorCode::ParamError, "rl_bias must be in [0, 1]");
  if (p.max_n < 1) raise(ErrorCode::ParamError, "max_n must be at least 1");

  Rng rng(seed);
  Builder b;
  b.max_n = p.max_n;

  auto pick_terminal = [&]() {
    return terminal_symbol(alpha_byte(static_cast<unsigned>(rng.below(p.alphabet))));
  };
  // Recent nonterminals preferred; terminals keep the alphabet in play.
  auto pick = [&](std::uint64_t fit) -> Symbol {
    if (!b.rules.empty() && rng.chance(0.75)) {
      for (int tries = 0; tries < 4; ++tries) {
        std::size_t window = std::min<std::size_t>(b.rules.size(), 8);
        std::size_t idx = b.rules.size() - 1 - rng.below(window);
        if (rng.chance(0.3)) idx = rng.below(b.rules.size());
        if (b.lens[idx] <= fit) return kFirstNonterminal + static_cast<Symbol>(idx);
      }
    }
    return pick_terminal();
  };

  auto add_run = [&](Symbol base, std::uint64_t smax) -> Symbol {
    std::uint64_t s = rng.range(2, std::min<std::uint64_t>(smax, 6));
    Rule r;
    r.base = base;
    r.power = s;
    return b.add(std::move(r), b.len_of(base) * s);
  };

  // One guaranteed nested run-length pair: A -> B^s over B -> D^t gives
  // exp(A) a period no longer than |D|, the case worth stressing.
  if (p.rl_bias > 0.0 && p.max_n >= 4 && p.max_rules >= 4) {
    Symbol d;
    if (p.max_n >= 12 && b.rules.size() + 4 < p.max_rules && rng.chance(0.5)) {
      Rule seq;
      std::uint64_t t = rng.range(2, 3);
      for (std::uint64_t i = 0; i < t; ++i) seq.rhs.push_back(pick_terminal());
      d = b.add(std::move(seq), t);
    } else {
      d = pick_terminal();
    }
    std::uint64_t dl = b.len_of(d);
    if (dl * 4 <= p.max_n) {
      Symbol base = add_run(d, (p.max_n / 2) / dl);
      add_run(base, p.max_n / b.len_of(base));
    }
  }

  std::uint64_t spins = 4 * p.max_rules + 16;  // tiny budgets stall otherwise
  while (b.rules.size() + 1 < p.max_rules && spins-- > 0) {
    if (rng.chance(p.rl_bias)) {
      Symbol base = pick(p.max_n / 2);
      if (b.len_of(base) * 2 <= p.max_n) add_run(base, p.max_n / b.len_of(base));
    } else if (p.max_n >= 2) {
      Rule seq;
      std::uint64_t want = rng.range(2, 5);
      std::uint64_t total = 0;
      while (seq.rhs.size() < want && total < p.max_n) {
        Symbol c = pick(p.max_n - total - (seq.rhs.empty() ? 1 : 0));
        seq.rhs.push_back(c);
        total += b.len_of(c);
      }
      if (seq.rhs.size() >= 2) b.add(std::move(seq), total);
    }
  }

  // Start rule over a random slice of the pool.
  Rule start;
  std::uint64_t total = 0;
  std::uint64_t limit = rng.range(2, 12);
  while (start.rhs.size() < limit && total < p.max_n) {
    Symbol c = pick(p.max_n - total);
    start.rhs.push_back(c);
    total += b.len_of(c);
  }
  while (start.rhs.size() < 2 && total < p.max_n) {
    start.rhs.push_back(pick_terminal());
    ++total;
  }
  Symbol start_sym = b.add(std::move(start), total);
  return Grammar::from_rules(std::move(b.rules), start_sym);
}

std::vector<std::string> gen_patterns(std::string_view text, std::uint64_t seed,
                                      std::size_t count, std::size_t max_len,
                                      const Grammar* g) {
  Rng rng(seed);
  std::size_t n = text.size();
  std::vector<unsigned char> alphabet;
  {
    std::set<unsigned char> seen(text.begin(), text.end());
    alphabet.assign(seen.begin(), seen.end());
  }
  if (alphabet.empty()) alphabet.push_back('a');
  if (max_len < 1) max_len = 1;

  std::vector<std::string> seeds;  // periodic cores
  if (g) {
    for (std::size_t i = 0; i < g->num_rules(); ++i) {
      const Rule& r = g->rule(g->rule_symbol(i));
      if (!r.is_run()) continue;
      std::uint64_t take = std::min<std::uint64_t>(g->length(r.base), 8);
      seeds.push_back(extract(*g, r.base, 1, take));
    }
  }

  auto rand_byte = [&](double wild) {
    if (rng.chance(wild)) return static_cast<unsigned char>(rng.below(256));
    return alphabet[rng.below(alphabet.size())];
  };
  auto substring = [&](std::size_t len) {
    len = std::min(len, n);
    if (len == 0) return std::string(1, char(rand_byte(0.0)));
    std::size_t pos = rng.below(n - len + 1);
    return std::string(text.substr(pos, len));
  };

  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t len = rng.range(1, max_len);
    std::string pat;
    switch (i % 4) {
      case 0:
        pat = substring(len);
        break;
      case 1: {
        pat = substring(len);
        pat[rng.below(pat.size())] = char(rand_byte(0.1));
        break;
      }
      case 2: {
        if (max_len < 2) {
          pat = substring(len);
          break;
        }
        len = std::max<std::size_t>(len, 2);
        std::string core;
        if (!seeds.empty() && rng.chance(0.7))
          core = seeds[rng.below(seeds.size())];
        else
          core = substring(rng.range(1, std::max<std::size_t>(len / 2, 1)));
        core.resize(std::max<std::size_t>(std::min(core.size(), len / 2), 1), core[0]);
        while (pat.size() < len) pat.append(core);
        pat.resize(len);
        break;
      }
      default:
        for (std::size_t j = 0; j < len; ++j) pat.push_back(char(rand_byte(0.05)));
        break;
    }
    out.push_back(std::move(pat));
  }
  return out;
}

}  // namespace rlxi
