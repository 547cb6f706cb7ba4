#include "rlxi/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace rlxi {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_name(std::string_view t) {
  if (t.empty() || !is_name_start(t[0])) return false;
  for (char c : t)
    if (!is_name_char(c)) return false;
  return true;
}

int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Quoted terminal token: 'x' with \n \t \r \0 \\ \' \xHH escapes.
bool parse_terminal_token(std::string_view t, unsigned char& out) {
  if (t.size() < 3 || t.front() != '\'' || t.back() != '\'') return false;
  std::string_view body = t.substr(1, t.size() - 2);
  if (body.size() == 1 && body[0] != '\\') {
    out = static_cast<unsigned char>(body[0]);
    return true;
  }
  if (body.size() >= 2 && body[0] == '\\') {
    switch (body[1]) {
      case 'n': out = '\n'; return body.size() == 2;
      case 't': out = '\t'; return body.size() == 2;
      case 'r': out = '\r'; return body.size() == 2;
      case '0': out = '\0'; return body.size() == 2;
      case '\\': out = '\\'; return body.size() == 2;
      case '\'': out = '\''; return body.size() == 2;
      case 'x': {
        if (body.size() != 4) return false;
        int h = hex_val(body[2]), l = hex_val(body[3]);
        if (h < 0 || l < 0) return false;
        out = static_cast<unsigned char>(h * 16 + l);
        return true;
      }
      default: return false;
    }
  }
  return false;
}

std::string quote_terminal(unsigned char b) {
  switch (b) {
    case '\n': return "'\\n'";
    case '\t': return "'\\t'";
    case '\r': return "'\\r'";
    case '\0': return "'\\0'";
    case '\\': return "'\\\\'";
    case '\'': return "'\\''";
    default: break;
  }
  if (b >= 0x20 && b < 0x7f) return std::string("'") + char(b) + "'";
  static const char* hex = "0123456789abcdef";
  std::string s = "'\\x";
  s += hex[b >> 4];
  s += hex[b & 15];
  s += "'";
  return s;
}

// Whitespace-separated tokens, with two refinements: '^' stands alone even
// when written tight (X1^4), and a leading quote swallows everything through
// the closing quote so '^' and '\'' stay single tokens.
std::vector<std::string_view> tokenize(std::string_view line) {
  auto space = [&](std::size_t k) {
    return std::isspace(static_cast<unsigned char>(line[k])) != 0;
  };
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && space(i)) ++i;
    if (i >= line.size()) break;
    if (line[i] == '^') {
      out.push_back(line.substr(i, 1));
      ++i;
      continue;
    }
    std::size_t j = i;
    if (line[i] == '\'') {
      ++j;
      while (j < line.size() && line[j] != '\'') j += (line[j] == '\\') ? 2 : 1;
      if (j < line.size()) ++j;  // closing quote
      if (j > line.size()) j = line.size();
      while (j < line.size() && !space(j) && line[j] != '^') ++j;  // keep junk attached
    } else {
      while (j < line.size() && !space(j) && line[j] != '^') ++j;
    }
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::vector<Violation> Grammar::validate(const std::vector<Rule>& rules, Symbol start) {
  std::vector<Violation> report;
  auto defined = [&](Symbol s) {
    return is_terminal(s) || (is_nonterminal(s) && s - kFirstNonterminal < rules.size());
  };
  auto sym_name = [&](Symbol s) {
    return is_terminal(s) ? quote_terminal(terminal_byte(s))
                          : "R" + std::to_string(s - kFirstNonterminal);
  };
  if (!defined(start))
    report.push_back({ErrorCode::UndefinedSymbol, "start symbol is undefined"});
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& r = rules[i];
    std::string head = "rule " + std::to_string(i);
    if (r.is_run() || r.base != kNoSymbol) {
      if (r.power < 2)
        report.push_back({ErrorCode::ExponentTooSmall,
                          head + ": run-length exponent " + std::to_string(r.power)});
      if (r.base == kNoSymbol || !defined(r.base))
        report.push_back({ErrorCode::UndefinedSymbol, head + ": undefined base"});
    } else {
      if (r.rhs.empty()) report.push_back({ErrorCode::EmptyBody, head + ": empty body"});
      for (Symbol s : r.rhs)
        if (!defined(s))
          report.push_back({ErrorCode::UndefinedSymbol, head + ": undefined symbol"});
    }
  }
  if (!report.empty()) return report;

  // Cycle check over the reference graph.
  std::vector<int> color(rules.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < rules.size(); ++root) {
    if (color[root] != 0) continue;
    stack.push_back(root);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      if (color[v] == 0) {
        color[v] = 1;
        const Rule& r = rules[v];
        auto visit = [&](Symbol s) {
          if (!is_nonterminal(s)) return true;
          std::size_t u = s - kFirstNonterminal;
          if (color[u] == 1) {
            report.push_back({ErrorCode::CycleDetected,
                              "cycle through " + sym_name(Symbol(kFirstNonterminal + u))});
            return false;
          }
          if (color[u] == 0) stack.push_back(u);
          return true;
        };
        bool ok = true;
        if (r.is_run()) {
          ok = visit(r.base);
        } else {
          for (Symbol s : r.rhs)
            if (!(ok = visit(s))) break;
        }
        if (!ok) return report;
      } else {
        if (color[v] == 1) color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return report;
}

void Grammar::finalize() {
  // Resolve unary sequence aliases (validation excluded cycles).
  std::vector<Symbol> resolved(rules_.size(), kNoSymbol);
  auto resolve = [&](Symbol s) {
    Symbol cur = s;
    while (is_nonterminal(cur)) {
      const Rule& r = rules_[cur - kFirstNonterminal];
      if (r.is_run() || r.rhs.size() != 1) break;
      cur = r.rhs[0];
    }
    return cur;
  };
  for (std::size_t i = 0; i < rules_.size(); ++i)
    resolved[i] = resolve(rule_symbol(i));

  // Drop unary rules, remap ids.
  std::vector<Symbol> remap(rules_.size(), kNoSymbol);
  std::vector<Rule> kept;
  std::vector<std::string> kept_names;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Rule& r = rules_[i];
    if (!r.is_run() && r.rhs.size() == 1) continue;
    remap[i] = kFirstNonterminal + static_cast<Symbol>(kept.size());
    kept.push_back(r);
    if (i < names_.size()) kept_names.push_back(names_[i]);
  }
  auto final_id = [&](Symbol s) {
    if (!is_nonterminal(s)) return s;
    Symbol t = resolved[s - kFirstNonterminal];
    return is_nonterminal(t) ? remap[t - kFirstNonterminal] : t;
  };
  for (Rule& r : kept) {
    if (r.is_run()) {
      r.base = final_id(r.base);
    } else {
      for (Symbol& s : r.rhs) s = final_id(s);
    }
  }
  start_ = final_id(start_);
  rules_ = std::move(kept);
  names_ = std::move(kept_names);
  while (names_.size() < rules_.size())
    names_.push_back("R" + std::to_string(names_.size()));

  // Expansion lengths, children first.
  lengths_.assign(rules_.size(), 0);
  std::vector<int> state(rules_.size(), 0);
  std::vector<std::size_t> stack;
  auto len_of = [&](Symbol s) -> std::uint64_t {
    return is_terminal(s) ? 1 : lengths_[s - kFirstNonterminal];
  };
  constexpr std::uint64_t kMaxLen = std::uint64_t(1) << 62;
  for (std::size_t root = 0; root < rules_.size(); ++root) {
    if (state[root] == 2) continue;
    stack.push_back(root);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      if (state[v] == 0) {
        state[v] = 1;
        const Rule& r = rules_[v];
        auto need = [&](Symbol s) {
          if (is_nonterminal(s) && state[s - kFirstNonterminal] == 0)
            stack.push_back(s - kFirstNonterminal);
        };
        if (r.is_run())
          need(r.base);
        else
          for (Symbol s : r.rhs) need(s);
      } else {
        if (state[v] == 1) {
          const Rule& r = rules_[v];
          unsigned __int128 total = 0;
          if (r.is_run())
            total = static_cast<unsigned __int128>(len_of(r.base)) * r.power;
          else
            for (Symbol s : r.rhs) total += len_of(s);
          if (total > kMaxLen)
            raise(ErrorCode::Overflow, "expansion length exceeds 2^62");
          lengths_[v] = static_cast<std::uint64_t>(total);
          state[v] = 2;
        }
        stack.pop_back();
      }
    }
  }
}

Grammar Grammar::from_rules(std::vector<Rule> rules, Symbol start,
                            std::vector<std::string> names) {
  auto report = validate(rules, start);
  if (!report.empty()) raise(report[0].code, report[0].message);
  Grammar g;
  g.rules_ = std::move(rules);
  g.start_ = start;
  g.names_ = std::move(names);
  g.finalize();
  return g;
}

Grammar Grammar::from_text(std::string_view text) {
  struct RawRule {
    std::string name;
    std::vector<std::string> items;  // raw tokens
    bool run = false;
    std::uint64_t power = 0;
    std::size_t line_no = 0;
  };
  std::vector<RawRule> raws;
  std::map<std::string, std::size_t, std::less<>> head_index;
  std::string start_name;
  bool have_start = false;
  std::size_t start_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    auto toks = tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;

    if (toks[0] == "start") {
      if (toks.size() != 2)
        raise(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'start NAME'");
      if (have_start)
        raise(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": duplicate start line");
      start_name = std::string(toks[1]);
      have_start = true;
      start_line = line_no;
      continue;
    }

    if (toks.size() < 2 || toks[1] != "->")
      raise(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'NAME -> ...'");
    if (!valid_name(toks[0]))
      raise(ErrorCode::ParseError,
            "line " + std::to_string(line_no) + ": bad rule name '" + std::string(toks[0]) + "'");

    RawRule rr;
    rr.name = std::string(toks[0]);
    rr.line_no = line_no;
    if (toks.size() == 5 && toks[3] == "^") {
      rr.run = true;
      rr.items.push_back(std::string(toks[2]));
      const std::string_view num = toks[4];
      std::uint64_t v = 0;
      bool ok = !num.empty() && num.size() <= 19;
      for (char c : num) {
        if (c < '0' || c > '9') {
          ok = false;
          break;
        }
        v = v * 10 + std::uint64_t(c - '0');
      }
      if (!ok)
        raise(ErrorCode::ParseError,
              "line " + std::to_string(line_no) + ": bad exponent '" + std::string(num) + "'");
      rr.power = v;
    } else {
      for (std::size_t i = 2; i < toks.size(); ++i) {
        if (toks[i] == "^")
          raise(ErrorCode::ParseError,
                "line " + std::to_string(line_no) +
                    ": misplaced '^' (run-length rules are NAME -> SYM ^ COUNT)");
        rr.items.push_back(std::string(toks[i]));
      }
    }
    if (rr.items.empty())
      raise(ErrorCode::EmptyBody, "line " + std::to_string(line_no) + ": rule '" + rr.name +
                                      "' has no body");
    auto [it, fresh] = head_index.try_emplace(rr.name, raws.size());
    if (!fresh)
      raise(ErrorCode::DuplicateRule,
            "line " + std::to_string(line_no) + ": second rule for '" + rr.name + "'");
    raws.push_back(std::move(rr));
  }

  if (raws.empty() && !have_start)
    raise(ErrorCode::ParseError, "no rules in grammar source");

  // Token -> symbol: defined heads win; quoted terminals; single undefined
  // characters read as terminals.
  auto resolve_token = [&](const std::string& t, std::size_t at_line) -> Symbol {
    auto it = head_index.find(t);
    if (it != head_index.end()) return kFirstNonterminal + static_cast<Symbol>(it->second);
    unsigned char b;
    if (parse_terminal_token(t, b)) return terminal_symbol(b);
    if (t[0] == '\'')
      raise(ErrorCode::ParseError,
            "line " + std::to_string(at_line) + ": bad terminal literal " + t);
    if (t.size() == 1) return terminal_symbol(static_cast<unsigned char>(t[0]));
    raise(ErrorCode::UndefinedSymbol,
          "line " + std::to_string(at_line) + ": undefined symbol '" + t + "'");
  };

  std::vector<Rule> rules(raws.size());
  std::vector<std::string> names(raws.size());
  for (std::size_t i = 0; i < raws.size(); ++i) {
    const RawRule& rr = raws[i];
    names[i] = rr.name;
    if (rr.run) {
      rules[i].base = resolve_token(rr.items[0], rr.line_no);
      rules[i].power = rr.power;
    } else {
      for (const std::string& t : rr.items)
        rules[i].rhs.push_back(resolve_token(t, rr.line_no));
    }
  }

  Symbol start;
  if (have_start)
    start = resolve_token(start_name, start_line);
  else
    start = kFirstNonterminal;  // first rule

  return from_rules(std::move(rules), start, std::move(names));
}

std::uint64_t Grammar::length(Symbol s) const {
  if (is_terminal(s)) return 1;
  if (!is_nonterminal(s) || s - kFirstNonterminal >= rules_.size())
    raise(ErrorCode::UndefinedSymbol, "length of undefined symbol " + std::to_string(s));
  return lengths_[s - kFirstNonterminal];
}

std::uint64_t Grammar::size_grl() const {
  std::uint64_t g = 0;
  for (const Rule& r : rules_) g += r.is_run() ? 2 : r.rhs.size();
  return g;
}

std::uint64_t Grammar::num_run_rules() const {
  std::uint64_t c = 0;
  for (const Rule& r : rules_) c += r.is_run();
  return c;
}

const std::string& Grammar::name(Symbol s) const {
  static thread_local std::string term;
  if (is_terminal(s)) {
    term = quote_terminal(terminal_byte(s));
    return term;
  }
  return names_[s - kFirstNonterminal];
}

Symbol Grammar::symbol_named(std::string_view nm) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == nm) return rule_symbol(i);
  return kNoSymbol;
}

std::string grammar_to_text(const Grammar& g) {
  std::ostringstream out;
  Symbol st = g.start();
  out << "start " << (is_terminal(st) ? quote_terminal(terminal_byte(st)) : g.name(st))
      << "\n";
  for (std::size_t i = 0; i < g.num_rules(); ++i) {
    Symbol s = g.rule_symbol(i);
    const Rule& r = g.rule(s);
    out << g.name(s) << " ->";
    if (r.is_run()) {
      out << " " << (is_terminal(r.base) ? quote_terminal(terminal_byte(r.base)) : g.name(r.base))
          << " ^ " << r.power;
    } else {
      for (Symbol c : r.rhs)
        out << " " << (is_terminal(c) ? quote_terminal(terminal_byte(c)) : g.name(c));
    }
    out << "\n";
  }
  return out.str();
}

OccurrenceModel::OccurrenceModel(const Grammar& g) {
  std::size_t slots = kFirstNonterminal + g.num_rules();
  mult_.assign(slots, 0);
  mentions_.assign(slots, {});
  reachable_.assign(slots, false);

  // Mentions from every rule (unreachable heads contribute nothing later).
  for (std::size_t i = 0; i < g.num_rules(); ++i) {
    Symbol h = g.rule_symbol(i);
    const Rule& r = g.rule(h);
    if (r.is_run()) {
      mentions_[r.base].push_back({h, 0, g.length(r.base), r.power});
    } else {
      std::uint64_t off = 0;
      for (Symbol c : r.rhs) {
        mentions_[c].push_back({h, off, 0, 1});
        off += g.length(c);
      }
    }
  }

  // Reachable symbols in parents-first order (reverse DFS postorder).
  std::vector<std::pair<Symbol, std::size_t>> stack;
  std::vector<Symbol> post;
  auto push = [&](Symbol s) {
    if (!reachable_[s]) {
      reachable_[s] = true;
      stack.push_back({s, 0});
    }
  };
  push(g.start());
  while (!stack.empty()) {
    auto& [s, child] = stack.back();
    if (is_terminal(s)) {
      post.push_back(s);
      stack.pop_back();
      continue;
    }
    const Rule& r = g.rule(s);
    std::size_t deg = r.is_run() ? 1 : r.rhs.size();
    if (child < deg) {
      Symbol c = r.is_run() ? r.base : r.rhs[child];
      ++child;
      push(c);
    } else {
      post.push_back(s);
      stack.pop_back();
    }
  }
  topo_.assign(post.rbegin(), post.rend());

  // Parse-tree multiplicities, parents before children.
  mult_[g.start()] = 1;
  constexpr std::uint64_t kMaxMult = std::uint64_t(1) << 62;
  for (Symbol h : topo_) {
    if (is_terminal(h)) continue;
    std::uint64_t m = mult_[h];
    if (m == 0) continue;
    const Rule& r = g.rule(h);
    if (r.is_run()) {
      unsigned __int128 add = static_cast<unsigned __int128>(m) * r.power;
      if (add + mult_[r.base] > kMaxMult)
        raise(ErrorCode::Overflow, "parse-tree multiplicities exceed 2^62");
      mult_[r.base] += static_cast<std::uint64_t>(add);
    } else {
      for (Symbol c : r.rhs) {
        if (mult_[c] + m > kMaxMult)
          raise(ErrorCode::Overflow, "parse-tree multiplicities exceed 2^62");
        mult_[c] += m;
      }
    }
  }
}

std::uint64_t OccurrenceModel::multiplicity(Symbol s) const {
  return s < mult_.size() ? mult_[s] : 0;
}

bool OccurrenceModel::reachable(Symbol s) const {
  return s < reachable_.size() && reachable_[s];
}

const std::vector<OccurrenceModel::Mention>& OccurrenceModel::mentions(Symbol s) const {
  static const std::vector<Mention> empty;
  return s < mentions_.size() ? mentions_[s] : empty;
}

}  // namespace rlxi
