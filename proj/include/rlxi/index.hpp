#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rlxi/grammar.hpp"
#include "rlxi/grid.hpp"
#include "rlxi/signature.hpp"

namespace rlxi {

// One rank of the X universe: the reversed expansion of sym.
struct XKey {
  Symbol sym = kNoSymbol;
  std::uint64_t len = 0;
};

// One rank of the Y universe.
struct YKey {
  enum class Kind : std::uint8_t {
    RuleSuffix,  // exp(sym)[off+1 ..], the body suffix after a cut child
    Power,       // exp(sym) repeated, truncated to len (run-length rows)
  };
  Kind kind = Kind::RuleSuffix;
  Symbol sym = kNoSymbol;
  std::uint64_t off = 0;
  std::uint64_t len = 0;
};

// What a reported main-grid point means for locating.
struct Locus {
  enum class Kind : std::uint8_t {
    Null,    // counting-only point (run-length count weight)
    Child,   // sequence rule head, cut after prefix of length off
    Run,     // run-length rule head, occurrences along copy boundaries
  };
  Kind kind = Kind::Null;
  Symbol head = kNoSymbol;
  std::uint64_t off = 0;
};

// Rules A -> B^s sharing the same primitive key exp(A)[1..rho], gridded by
// (|B| ascending, s' ascending) with payloads (c, c*s, c*beta, c*s').
struct PeriodicFamily {
  std::uint64_t rho = 0;
  std::uint64_t kappa = 0;   // signature of the key under the index scheme
  Symbol rep = kNoSymbol;    // any member head; key = exp(rep)[1..rho]
  std::vector<std::uint64_t> row_lens;
  std::vector<std::uint64_t> col_pows;
  std::vector<Symbol> heads;  // per point id
  WeightedGrid grid;
};

struct Index {
  Grammar grammar;
  OccurrenceModel model;
  std::uint64_t n = 0;
  SignatureScheme scheme{};

  std::vector<XKey> xkeys;  // rank r is xkeys[r-1]
  std::vector<YKey> ykeys;
  WeightedGrid main;            // payload 0: count weight
  std::vector<Locus> loci;      // per main point id
  std::vector<PeriodicFamily> families;
  std::vector<std::uint64_t> key_lengths;  // distinct rho, ascending
  std::unordered_map<std::uint64_t, std::uint32_t> by_kappa;

  Index(Grammar g, OccurrenceModel m) : grammar(std::move(g)), model(std::move(m)) {}
};

// Deterministic given grammar and seed. Decompresses the text once to rank
// the point coordinates; the finished index keeps only grammar-sized data.
Index build_index(const Grammar& g, std::uint64_t seed = 0,
                  std::uint64_t max_bytes = std::uint64_t(1) << 28);

}  // namespace rlxi
