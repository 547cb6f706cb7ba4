#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "rlxi/extract.hpp"
#include "rlxi/gen.hpp"
#include "rlxi/io.hpp"
#include "rlxi/oracle.hpp"
#include "rlxi/query.hpp"

namespace {

using namespace rlxi;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::IoError:
      return 2;
    case ErrorCode::BadMagic:
    case ErrorCode::VersionMismatch:
    case ErrorCode::ChecksumMismatch:
    case ErrorCode::Truncated:
    case ErrorCode::Malformed:
      return 3;
    default:
      return 1;
  }
}

std::string read_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) raise(ErrorCode::IoError, "cannot open " + path);
  std::string out;
  char buf[65536];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
  bool bad = std::ferror(f) != 0;
  std::fclose(f);
  if (bad) raise(ErrorCode::IoError, "read failure on " + path);
  return out;
}

void write_file(const std::string& path, std::string_view content) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) raise(ErrorCode::IoError, "cannot open " + path + " for writing");
  std::size_t put = std::fwrite(content.data(), 1, content.size(), f);
  int rc = std::fclose(f);
  if (put != content.size() || rc != 0) raise(ErrorCode::IoError, "short write to " + path);
}

std::string printable(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    if (c >= 0x20 && c < 0x7f && c != '\\') {
      out += char(c);
    } else {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\x%02x", c);
      out += buf;
    }
  }
  return out;
}

struct PatternArgs {
  std::string inline_pat;
  std::string file_pat;
  CLI::Option* inline_opt = nullptr;

  void attach(CLI::App* cmd) {
    inline_opt = cmd->add_option("-p,--pattern", inline_pat, "pattern as a raw byte string");
    cmd->add_option("-P,--pattern-file", file_pat, "file whose bytes are the pattern")
        ->excludes(inline_opt);
  }
  std::string resolve() const {
    if (inline_opt && inline_opt->count() > 0) return inline_pat;
    if (!file_pat.empty()) return read_file(file_pat);
    raise(ErrorCode::ParseError, "a pattern is required: -p STRING or -P FILE");
  }
};

// Shared by `build --check` and `verify`: random patterns through the
// index against plain scans of the grammar's own expansion. Returns 0 or
// prints a reproducer and returns 4.
int oracle_sweep(const Index& idx, const Grammar& source, const std::string& origin,
                 std::uint64_t seed, std::uint64_t patterns, std::uint64_t max_len) {
  std::string text = decompress(source);
  auto pats = gen_patterns(text, seed, patterns, max_len, &source);
  for (const std::string& p : pats) {
    std::uint64_t got = count(idx, p);
    std::uint64_t want = naive_count(text, p);
    auto got_pos = locate(idx, p);
    auto want_pos = naive_locate(text, p);
    const char* what = nullptr;
    if (got != want)
      what = "count";
    else if (got_pos != want_pos)
      what = "locate";
    else if (got_pos.size() != got)
      what = "count/locate size";
    if (what) {
      std::printf("mismatch: %s\n", what);
      std::printf("  grammar: %s\n", origin.c_str());
      std::printf("  pattern: %s\n", printable(p).c_str());
      std::printf("  count: index=%llu oracle=%llu\n", (unsigned long long)got,
                  (unsigned long long)want);
      return 4;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counting, locating and MEMs over run-length grammar-compressed text"};
  app.require_subcommand(1);
  int rc = 0;

  auto* build = app.add_subcommand("build", "build an index from a grammar file");
  struct {
    std::string grammar, out;
    std::uint64_t seed = 0;
    bool check = false;
  } bargs;
  build->add_option("-g,--grammar", bargs.grammar, "grammar text file")->required();
  build->add_option("-o,--output", bargs.out, "index file to write")->required();
  build->add_option("--seed", bargs.seed, "signature seed");
  build->add_flag("--check", bargs.check, "spot-check 100 patterns against a scan");
  build->callback([&] {
    Grammar g = Grammar::from_text(read_file(bargs.grammar));
    Index idx = build_index(g, bargs.seed);
    save_index(idx, bargs.out);
    std::printf("n=%llu g_rl=%llu\n", (unsigned long long)idx.n,
                (unsigned long long)g.size_grl());
    if (bargs.check) {
      std::uint64_t max_len = std::min<std::uint64_t>(64, std::max<std::uint64_t>(idx.n, 1));
      rc = oracle_sweep(idx, g, bargs.grammar, bargs.seed, 100, max_len);
    }
  });

  auto* cnt = app.add_subcommand("count", "number of occurrences of a pattern");
  struct {
    std::string index;
    PatternArgs pat;
  } cargs;
  cnt->add_option("-i,--index", cargs.index, "index file")->required();
  cargs.pat.attach(cnt);
  cnt->callback([&] {
    Index idx = load_index(cargs.index);
    std::printf("%llu\n", (unsigned long long)count(idx, cargs.pat.resolve()));
  });

  auto* loc = app.add_subcommand("locate", "1-based occurrence positions, ascending");
  struct {
    std::string index;
    PatternArgs pat;
  } largs;
  loc->add_option("-i,--index", largs.index, "index file")->required();
  largs.pat.attach(loc);
  loc->callback([&] {
    Index idx = load_index(largs.index);
    for (std::uint64_t p : locate(idx, largs.pat.resolve()))
      std::printf("%llu\n", (unsigned long long)p);
  });

  auto* mem = app.add_subcommand("mems", "maximal pattern substrings occurring k+ times");
  struct {
    std::string index;
    PatternArgs pat;
    std::uint64_t k = 1;
  } margs;
  mem->add_option("-i,--index", margs.index, "index file")->required();
  mem->add_option("-k", margs.k, "occurrence threshold (default 1)");
  margs.pat.attach(mem);
  mem->callback([&] {
    Index idx = load_index(margs.index);
    for (const Mem& r : k_mems(idx, margs.pat.resolve(), margs.k))
      std::printf("%llu %llu %llu\n", (unsigned long long)r.i, (unsigned long long)r.j,
                  (unsigned long long)r.count);
  });

  auto* ext = app.add_subcommand("extract", "print text[i..j], 1-based inclusive");
  struct {
    std::string index;
    std::uint64_t i = 0, j = 0;
  } eargs;
  ext->add_option("-i,--index", eargs.index, "index file")->required();
  ext->add_option("from", eargs.i, "start position, 1-based")->required();
  ext->add_option("to", eargs.j, "end position, inclusive")->required();
  ext->callback([&] {
    Index idx = load_index(eargs.index);
    std::string s = extract(idx.grammar, idx.grammar.start(), eargs.i, eargs.j);
    std::fwrite(s.data(), 1, s.size(), stdout);
    std::fputc('\n', stdout);
  });

  auto* ver = app.add_subcommand("verify", "compare index answers against plain scans");
  struct {
    std::string grammar, index;
    std::uint64_t patterns = 1000, max_len = 64, seed = 1;
  } vargs;
  ver->add_option("-g,--grammar", vargs.grammar, "grammar text file")->required();
  ver->add_option("-i,--index", vargs.index, "index file (default: build in memory)");
  ver->add_option("--patterns", vargs.patterns, "number of random patterns");
  ver->add_option("--max-len", vargs.max_len, "longest pattern to draw");
  ver->add_option("--seed", vargs.seed, "pattern seed");
  ver->callback([&] {
    if (vargs.patterns == 0) return;
    Grammar g = Grammar::from_text(read_file(vargs.grammar));
    Index idx = vargs.index.empty() ? build_index(g, vargs.seed) : load_index(vargs.index);
    rc = oracle_sweep(idx, g, vargs.grammar, vargs.seed, vargs.patterns,
                      std::max<std::uint64_t>(vargs.max_len, 1));
  });

  auto* st = app.add_subcommand("stats", "index shape and size figures");
  struct {
    std::string index;
  } sargs;
  st->add_option("-i,--index", sargs.index, "index file")->required();
  st->callback([&] {
    Index idx = load_index(sargs.index);
    std::uint64_t sigma = 0;
    for (unsigned b = 0; b < 256; ++b)
      sigma += idx.model.reachable(terminal_symbol(static_cast<unsigned char>(b)));
    std::printf("n = %llu\n", (unsigned long long)idx.n);
    std::printf("sigma = %llu\n", (unsigned long long)sigma);
    std::printf("g_rl = %llu\n", (unsigned long long)idx.grammar.size_grl());
    std::printf("#rules = %llu\n", (unsigned long long)idx.grammar.num_rules());
    std::printf("#run-length rules = %llu\n", (unsigned long long)idx.grammar.num_run_rules());
    std::printf("main-grid points = %llu\n", (unsigned long long)idx.main.size());
    std::printf("#H keys = %llu\n", (unsigned long long)idx.families.size());
    std::printf("G_pi sizes =");
    for (const PeriodicFamily& f : idx.families)
      std::printf(" %llu", (unsigned long long)f.grid.size());
    std::printf("\n");
    std::printf("index bytes = %llu\n",
                (unsigned long long)std::filesystem::file_size(sargs.index));
  });

  auto* gen = app.add_subcommand("gen", "emit a random grammar in the text format");
  struct {
    std::string out;
    std::uint64_t seed = 0;
    GenParams params;
  } gargs;
  gen->add_option("-o,--output", gargs.out, "grammar file to write")->required();
  gen->add_option("--seed", gargs.seed, "generator seed");
  gen->add_option("--max-rules", gargs.params.max_rules, "rule budget");
  gen->add_option("--alphabet", gargs.params.alphabet, "distinct terminals");
  gen->add_option("--rl-bias", gargs.params.rl_bias, "share of run-length rules, 0 to 1");
  gen->add_option("--max-n", gargs.params.max_n, "bound on the expanded length");
  gen->callback([&] {
    Grammar g = gen_grammar(gargs.seed, gargs.params);
    write_file(gargs.out, grammar_to_text(g));
    std::printf("n=%llu rules=%llu\n", (unsigned long long)g.text_length(),
                (unsigned long long)g.num_rules());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return rc;
}
