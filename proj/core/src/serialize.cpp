#include <array>
#include <cstdint>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "camem/serialize.hpp"

namespace camem {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("lattice parse: " + what);
}

std::uint32_t rotl(std::uint32_t x, int s) { return (x << s) | (x >> (32 - s)); }

std::array<std::uint32_t, 5> sha1(const std::string& msg) {
  std::array<std::uint32_t, 5> h = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu,
                                    0x10325476u, 0xC3D2E1F0u};
  std::string padded = msg;
  std::uint64_t bits = static_cast<std::uint64_t>(msg.size()) * 8;
  padded.push_back(static_cast<char>(0x80));
  while (padded.size() % 64 != 56) padded.push_back('\0');
  for (int i = 7; i >= 0; --i)
    padded.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));

  for (std::size_t chunk = 0; chunk < padded.size(); chunk += 64) {
    std::uint32_t w[80];
    for (int i = 0; i < 16; ++i)
      w[i] = (static_cast<std::uint32_t>(static_cast<unsigned char>(padded[chunk + 4 * i])) << 24) |
             (static_cast<std::uint32_t>(static_cast<unsigned char>(padded[chunk + 4 * i + 1])) << 16) |
             (static_cast<std::uint32_t>(static_cast<unsigned char>(padded[chunk + 4 * i + 2])) << 8) |
             static_cast<std::uint32_t>(static_cast<unsigned char>(padded[chunk + 4 * i + 3]));
    for (int i = 16; i < 80; ++i)
      w[i] = rotl(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);

    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
    for (int i = 0; i < 80; ++i) {
      std::uint32_t f, k;
      if (i < 20) {
        f = (b & c) | (~b & d);
        k = 0x5A827999u;
      } else if (i < 40) {
        f = b ^ c ^ d;
        k = 0x6ED9EBA1u;
      } else if (i < 60) {
        f = (b & c) | (b & d) | (c & d);
        k = 0x8F1BBCDCu;
      } else {
        f = b ^ c ^ d;
        k = 0xCA62C1D6u;
      }
      std::uint32_t tmp = rotl(a, 5) + f + e + k + w[i];
      e = d;
      d = c;
      c = rotl(b, 30);
      b = a;
      a = tmp;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
  }
  return h;
}

}  // namespace

std::string serialize_lattice(const Lattice& g) {
  std::ostringstream out;
  out << "lattice " << to_string(g.kind);
  switch (g.kind) {
    case LatticeKind::tree: out << ' ' << g.q << ' ' << g.depth; break;
    case LatticeKind::hyperbolic:
      out << ' ' << g.p << ' ' << g.q << ' ' << g.depth;
      break;
    case LatticeKind::euclidean:
      out << ' ' << g.p << ' ' << g.q << ' ' << g.width << ' ' << g.height;
      break;
    case LatticeKind::toom: out << ' ' << g.width << ' ' << g.height; break;
  }
  out << '\n';
  out << "vertices " << g.size() << '\n';
  for (std::size_t v = 0; v < g.size(); ++v) {
    out << v << ' ';
    if (g.shell[v] < 0)
      out << '-';
    else
      out << g.shell[v];
    out << ' ' << (g.boundary[v] ? 1 : 0) << ':';
    for (std::uint32_t w : g.out_edges[v]) out << ' ' << w;
    out << '\n';
  }
  return out.str();
}

Lattice parse_lattice(const std::string& text) {
  std::istringstream in(text);
  std::string line;

  if (!std::getline(in, line)) bad("empty input");
  std::istringstream head(line);
  std::string tag, kind_word;
  if (!(head >> tag >> kind_word) || tag != "lattice")
    bad("first line must be 'lattice <kind> <params>'");
  Lattice g;
  g.kind = lattice_kind_from_string(kind_word);
  bool ok = false;
  switch (g.kind) {
    case LatticeKind::tree: ok = static_cast<bool>(head >> g.q >> g.depth); break;
    case LatticeKind::hyperbolic:
      ok = static_cast<bool>(head >> g.p >> g.q >> g.depth);
      break;
    case LatticeKind::euclidean:
      ok = static_cast<bool>(head >> g.p >> g.q >> g.width >> g.height);
      break;
    case LatticeKind::toom:
      ok = static_cast<bool>(head >> g.width >> g.height);
      break;
  }
  std::string extra;
  if (!ok || (head >> extra)) bad("malformed parameters for kind '" + kind_word + "'");

  if (!std::getline(in, line)) bad("missing vertex count");
  std::istringstream count_line(line);
  std::size_t n = 0;
  if (!(count_line >> tag >> n) || tag != "vertices" || (count_line >> extra))
    bad("second line must be 'vertices <n>'");
  if (n > kMaxLatticeVertices) bad("vertex count exceeds the cap");

  g.out_edges.resize(n);
  g.shell.assign(n, -1);
  g.boundary.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!std::getline(in, line)) bad("truncated: expected " + std::to_string(n) + " vertex lines");
    auto colon = line.find(':');
    if (colon == std::string::npos)
      bad("vertex line " + std::to_string(v) + " lacks ':'");
    std::istringstream lhs(line.substr(0, colon));
    std::size_t idx = 0;
    std::string shell_word;
    int boundary_flag = -1;
    if (!(lhs >> idx >> shell_word >> boundary_flag) || (lhs >> extra))
      bad("vertex line " + std::to_string(v) + " must read '<v> <shell|-> <0|1>:'");
    if (idx != v) bad("vertex lines must be in index order; got " + std::to_string(idx));
    if (shell_word == "-") {
      g.shell[v] = -1;
    } else {
      std::size_t used = 0;
      int s = std::stoi(shell_word, &used);
      if (used != shell_word.size() || s < 0)
        bad("shell of vertex " + std::to_string(v) + " must be '-' or a nonnegative integer");
      g.shell[v] = s;
    }
    if (boundary_flag != 0 && boundary_flag != 1)
      bad("boundary flag of vertex " + std::to_string(v) + " must be 0 or 1");
    g.boundary[v] = static_cast<std::uint8_t>(boundary_flag);

    std::istringstream rhs(line.substr(colon + 1));
    long long w = 0;
    while (rhs >> w) {
      if (w < 0 || static_cast<std::size_t>(w) >= n)
        bad("edge target " + std::to_string(w) + " out of range on vertex " + std::to_string(v));
      g.out_edges[v].push_back(static_cast<std::uint32_t>(w));
    }
    if (!rhs.eof()) bad("trailing garbage in edge list of vertex " + std::to_string(v));
  }
  while (std::getline(in, line))
    if (!line.empty()) bad("trailing garbage after vertex lines");
  return g;
}

std::string content_hash(const std::string& bytes) {
  std::string blob = "blob " + std::to_string(bytes.size());
  blob.push_back('\0');
  blob += bytes;
  auto h = sha1(blob);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(40);
  for (std::uint32_t word : h)
    for (int i = 7; i >= 0; --i) out.push_back(hex[(word >> (4 * i)) & 0xf]);
  return out;
}

}  // namespace camem
