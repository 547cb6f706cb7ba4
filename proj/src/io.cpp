#include "rlxi/io.hpp"

#include <array>
#include <cstdio>
#include <cstring>
#include <set>

namespace rlxi {

namespace {

constexpr char kMagic[4] = {'R', 'L', 'X', 'I'};

struct Writer {
  std::vector<std::uint8_t> out;

  void u8(std::uint8_t v) { out.push_back(v); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
  }
  void bytes(const void* p, std::size_t len) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out.insert(out.end(), b, b + len);
  }
};

struct Reader {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos = 0;

  void need(std::size_t k) const {
    if (size - pos < k) raise(ErrorCode::Truncated, "index image ends mid-record");
  }
  std::uint8_t u8() {
    need(1);
    return data[pos++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = 0;
    for (int i = 0; i < 2; ++i) v |= std::uint16_t(data[pos++]) << (8 * i);
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(data[pos++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(data[pos++]) << (8 * i);
    return v;
  }
  std::uint64_t count(std::uint64_t per_item) {
    std::uint64_t c = u64();
    if (per_item > 0 && c > (size - pos) / per_item)
      raise(ErrorCode::Truncated, "record count exceeds remaining image");
    return c;
  }
  std::string str() {
    std::uint64_t len = count(1);
    need(len);
    std::string s(reinterpret_cast<const char*>(data + pos), len);
    pos += len;
    return s;
  }
};

}  // namespace

std::uint32_t crc32(const std::uint8_t* data, std::size_t size) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t c = 0xffffffffu;
  for (std::size_t i = 0; i < size; ++i) c = table[(c ^ data[i]) & 0xffu] ^ (c >> 8);
  return c ^ 0xffffffffu;
}

std::vector<std::uint8_t> serialize_index(const Index& idx) {
  Writer w;
  w.bytes(kMagic, 4);
  w.u16(kIndexFormatVersion);
  w.u64(0);  // total length, patched below

  const Grammar& g = idx.grammar;
  w.u64(g.num_rules());
  for (std::size_t i = 0; i < g.num_rules(); ++i) {
    const Rule& r = g.rule(g.rule_symbol(i));
    w.u8(r.is_run() ? 1 : 0);
    if (r.is_run()) {
      w.u32(r.base);
      w.u64(r.power);
    } else {
      w.u64(r.rhs.size());
      for (Symbol s : r.rhs) w.u32(s);
    }
    const std::string& nm = g.name(g.rule_symbol(i));
    w.u64(nm.size());
    w.bytes(nm.data(), nm.size());
  }
  w.u32(g.start());
  w.u64(idx.n);
  w.u64(idx.scheme.base);

  w.u64(idx.xkeys.size());
  for (const XKey& k : idx.xkeys) {
    w.u32(k.sym);
    w.u64(k.len);
  }
  w.u64(idx.ykeys.size());
  for (const YKey& k : idx.ykeys) {
    w.u8(std::uint8_t(k.kind));
    w.u32(k.sym);
    w.u64(k.off);
    w.u64(k.len);
  }

  w.u64(idx.main.size());
  for (std::uint32_t id = 0; id < idx.main.size(); ++id) {
    const GridPoint& p = idx.main.point(id);
    const Locus& l = idx.loci[id];
    w.u32(p.x);
    w.u32(p.y);
    w.u64(p.w[0]);
    w.u8(std::uint8_t(l.kind));
    w.u32(l.head);
    w.u64(l.off);
  }

  w.u64(idx.families.size());
  for (const PeriodicFamily& f : idx.families) {
    w.u64(f.rho);
    w.u64(f.kappa);
    w.u32(f.rep);
    w.u64(f.row_lens.size());
    for (std::uint64_t v : f.row_lens) w.u64(v);
    w.u64(f.col_pows.size());
    for (std::uint64_t v : f.col_pows) w.u64(v);
    w.u64(f.grid.size());
    for (std::uint32_t id = 0; id < f.grid.size(); ++id) {
      const GridPoint& p = f.grid.point(id);
      w.u32(p.x);
      w.u32(p.y);
      for (int c = 0; c < 4; ++c) w.u64(p.w[c]);
      w.u32(f.heads[id]);
    }
  }

  std::uint64_t total = w.out.size() + 4;
  for (int i = 0; i < 8; ++i) w.out[6 + i] = std::uint8_t(total >> (8 * i));
  std::uint32_t c = crc32(w.out.data(), w.out.size());
  w.u32(c);
  return w.out;
}

Index deserialize_index(const std::uint8_t* data, std::size_t size) {
  if (size < 18) raise(ErrorCode::Truncated, "image smaller than any valid index");
  if (std::memcmp(data, kMagic, 4) != 0)
    raise(ErrorCode::BadMagic, "not an index file");
  Reader r{data, size};
  r.pos = 4;
  std::uint16_t version = r.u16();
  if (version != kIndexFormatVersion)
    raise(ErrorCode::VersionMismatch,
          "index format v" + std::to_string(version) + ", expected v" +
              std::to_string(kIndexFormatVersion));
  std::uint64_t total = r.u64();
  if (total > size) raise(ErrorCode::Truncated, "image shorter than its declared length");
  if (total < size) raise(ErrorCode::Malformed, "trailing bytes after declared length");
  std::uint32_t stored = 0;
  for (int i = 0; i < 4; ++i) stored |= std::uint32_t(data[size - 4 + i]) << (8 * i);
  if (crc32(data, size - 4) != stored)
    raise(ErrorCode::ChecksumMismatch, "index image fails its checksum");
  r.size = size - 4;

  try {
    std::uint64_t nrules = r.count(2);
    std::vector<Rule> rules(nrules);
    std::vector<std::string> names(nrules);
    for (std::uint64_t i = 0; i < nrules; ++i) {
      if (r.u8()) {
        rules[i].base = r.u32();
        rules[i].power = r.u64();
      } else {
        std::uint64_t t = r.count(4);
        rules[i].rhs.resize(t);
        for (std::uint64_t k = 0; k < t; ++k) rules[i].rhs[k] = r.u32();
      }
      names[i] = r.str();
    }
    Symbol start = r.u32();
    Grammar g = Grammar::from_rules(std::move(rules), start, std::move(names));
    OccurrenceModel model(g);
    Index idx(std::move(g), std::move(model));
    idx.n = r.u64();
    if (idx.n != idx.grammar.text_length())
      raise(ErrorCode::Malformed, "stored text length disagrees with the grammar");
    idx.scheme.base = r.u64();

    std::uint64_t nx = r.count(12);
    idx.xkeys.resize(nx);
    for (auto& k : idx.xkeys) {
      k.sym = r.u32();
      k.len = r.u64();
    }
    std::uint64_t ny = r.count(21);
    idx.ykeys.resize(ny);
    for (auto& k : idx.ykeys) {
      std::uint8_t kind = r.u8();
      if (kind > 1) raise(ErrorCode::Malformed, "unknown y-key kind");
      k.kind = YKey::Kind(kind);
      k.sym = r.u32();
      k.off = r.u64();
      k.len = r.u64();
    }

    std::uint64_t np = r.count(29);
    std::vector<GridPoint> pts(np);
    idx.loci.resize(np);
    for (std::uint64_t i = 0; i < np; ++i) {
      pts[i].x = r.u32();
      pts[i].y = r.u32();
      pts[i].w[0] = r.u64();
      std::uint8_t kind = r.u8();
      if (kind > 2) raise(ErrorCode::Malformed, "unknown locus kind");
      idx.loci[i].kind = Locus::Kind(kind);
      idx.loci[i].head = r.u32();
      idx.loci[i].off = r.u64();
    }
    idx.main = WeightedGrid(static_cast<std::uint32_t>(nx), static_cast<std::uint32_t>(ny),
                            std::move(pts), 1);

    std::uint64_t nfam = r.count(28);
    idx.families.resize(nfam);
    std::set<std::uint64_t> rhos;
    for (auto& f : idx.families) {
      f.rho = r.u64();
      f.kappa = r.u64();
      f.rep = r.u32();
      std::uint64_t nr = r.count(8);
      f.row_lens.resize(nr);
      for (auto& v : f.row_lens) v = r.u64();
      std::uint64_t nc = r.count(8);
      f.col_pows.resize(nc);
      for (auto& v : f.col_pows) v = r.u64();
      std::uint64_t fp = r.count(44);
      std::vector<GridPoint> fpts(fp);
      f.heads.resize(fp);
      for (std::uint64_t i = 0; i < fp; ++i) {
        fpts[i].x = r.u32();
        fpts[i].y = r.u32();
        for (int c = 0; c < 4; ++c) fpts[i].w[c] = r.u64();
        f.heads[i] = r.u32();
      }
      f.grid = WeightedGrid(static_cast<std::uint32_t>(nr), static_cast<std::uint32_t>(nc),
                            std::move(fpts), 4);
      rhos.insert(f.rho);
    }
    if (r.pos != r.size) raise(ErrorCode::Malformed, "unconsumed bytes in index image");

    idx.key_lengths.assign(rhos.begin(), rhos.end());
    for (std::uint32_t i = 0; i < idx.families.size(); ++i)
      if (!idx.by_kappa.emplace(idx.families[i].kappa, i).second)
        raise(ErrorCode::Malformed, "duplicate key signature");
    return idx;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Truncated || e.code() == ErrorCode::Malformed) throw;
    raise(ErrorCode::Malformed, e.what());
  }
}

void save_index(const Index& idx, const std::string& path) {
  auto bytes = serialize_index(idx);
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) raise(ErrorCode::IoError, "cannot open " + path + " for writing");
  std::size_t written = std::fwrite(bytes.data(), 1, bytes.size(), f);
  int rc = std::fclose(f);
  if (written != bytes.size() || rc != 0)
    raise(ErrorCode::IoError, "short write to " + path);
}

Index load_index(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) raise(ErrorCode::IoError, "cannot open " + path);
  std::vector<std::uint8_t> bytes;
  std::array<std::uint8_t, 65536> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0)
    bytes.insert(bytes.end(), buf.begin(), buf.begin() + got);
  bool bad = std::ferror(f) != 0;
  std::fclose(f);
  if (bad) raise(ErrorCode::IoError, "read failure on " + path);
  return deserialize_index(bytes.data(), bytes.size());
}

}  // namespace rlxi
