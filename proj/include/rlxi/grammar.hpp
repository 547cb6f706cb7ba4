#ifndef RLXI_GRAMMAR_HPP
#define RLXI_GRAMMAR_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rlxi/common.hpp"

namespace rlxi {

// One rule per nonterminal. power == 0 marks a sequence rule; power >= 2 a
// run-length rule A -> base^power.
struct Rule {
  std::vector<Symbol> rhs;   // sequence body (>= 2 items after finalization)
  Symbol base = kNoSymbol;   // run-length base
  std::uint64_t power = 0;   // run-length exponent
  bool is_run() const { return power != 0; }
};

struct Violation {
  ErrorCode code;
  std::string message;
};

// Validated run-length context-free grammar generating exactly one text.
// Unary sequence rules are inlined during finalization, so grammar-tree
// internals always have >= 2 children; the start symbol may degenerate to a
// single terminal.
class Grammar {
 public:
  // Parse + validate + finalize. Throws Error on any problem.
  static Grammar from_text(std::string_view text);

  // Build directly from rules; ids in rhs refer to terminals or to
  // kFirstNonterminal + index into `rules`. Same validation path as from_text.
  static Grammar from_rules(std::vector<Rule> rules, Symbol start,
                            std::vector<std::string> names = {});

  // Validation report for a parsed-but-unchecked rule set (CLI diagnostics).
  static std::vector<Violation> validate(const std::vector<Rule>& rules, Symbol start);

  Symbol start() const { return start_; }
  std::uint64_t text_length() const { return length(start_); }
  std::size_t num_rules() const { return rules_.size(); }

  bool defined(Symbol s) const {
    return is_terminal(s) ||
           (is_nonterminal(s) && s - kFirstNonterminal < rules_.size());
  }
  const Rule& rule(Symbol s) const { return rules_[s - kFirstNonterminal]; }
  Symbol rule_symbol(std::size_t idx) const {
    return kFirstNonterminal + static_cast<Symbol>(idx);
  }

  // |exp(X)|; terminals have length 1.
  std::uint64_t length(Symbol s) const;

  // Sum of right-hand side sizes, run-length rules counting 2.
  std::uint64_t size_grl() const;
  std::uint64_t num_run_rules() const;

  // Name bookkeeping (parser-provided or synthesized; not serialized).
  const std::string& name(Symbol s) const;
  Symbol symbol_named(std::string_view name) const;  // kNoSymbol if absent

 private:
  friend class IndexReader;
  Grammar() = default;
  void finalize();  // inline unaries, compute lengths; assumes validated

  std::vector<Rule> rules_;
  Symbol start_ = kNoSymbol;
  std::vector<std::uint64_t> lengths_;  // per nonterminal, parallel to rules_
  std::vector<std::string> names_;
};

// Canonical text form (start header, quoted terminals); re-parses to an
// equivalent grammar.
std::string grammar_to_text(const Grammar& g);

// Parse-tree statistics of a grammar: how often each symbol's expansion
// occurs via the parse tree, and where each symbol is mentioned.
class OccurrenceModel {
 public:
  explicit OccurrenceModel(const Grammar& g);

  // Mentions of a symbol X: X occupies positions offset + k·stride
  // (k in [0, count)) within exp(head). Sequence mentions have stride 0,
  // count 1; a run-length mention of the base has stride |X| and count s.
  struct Mention {
    Symbol head;
    std::uint64_t offset;
    std::uint64_t stride;
    std::uint64_t count;
  };

  // Number of parse-tree nodes labeled X; for a terminal this is its number
  // of occurrences in the text (occ1).
  std::uint64_t multiplicity(Symbol s) const;
  std::uint64_t occ1(unsigned char b) const { return multiplicity(terminal_symbol(b)); }

  bool reachable(Symbol s) const;
  const std::vector<Mention>& mentions(Symbol s) const;

  // Reachable symbols, parents before children; starts with start().
  const std::vector<Symbol>& topological() const { return topo_; }

 private:
  std::size_t slot(Symbol s) const { return s; }
  std::vector<std::uint64_t> mult_;
  std::vector<std::vector<Mention>> mentions_;
  std::vector<bool> reachable_;
  std::vector<Symbol> topo_;
};

}  // namespace rlxi

#endif
