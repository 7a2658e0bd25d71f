#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace camem {

// Finite directed graph standing in for an infinite lattice truncation.
// out_edges[v] lists the cells v reads, in argument order; a self-loop
// supplies the cell's own state.  boundary marks vertices whose
// neighborhood is incomplete because of the truncation.
enum class LatticeKind { tree, hyperbolic, euclidean, toom };

std::string to_string(LatticeKind kind);
LatticeKind lattice_kind_from_string(const std::string& s);

enum class Tiling { square44, tri36, hex63 };

std::string to_string(Tiling tiling);
Tiling tiling_from_string(const std::string& s);

struct Lattice {
  LatticeKind kind = LatticeKind::tree;
  // Generation parameters; meaning depends on kind:
  //   tree(q, depth)  hyperbolic(p, q, shells)
  //   euclidean(p, q, width, height)  toom(width, height)
  int p = 0;
  int q = 0;
  int depth = 0;  // tree depth / hyperbolic shell count
  int width = 0;
  int height = 0;

  std::vector<std::vector<std::uint32_t>> out_edges;
  std::vector<std::int32_t> shell;  // distance from root, -1 when unset
  std::vector<std::uint8_t> boundary;

  std::size_t size() const { return out_edges.size(); }
  bool directed() const { return kind == LatticeKind::toom; }
  bool has_self_loop(std::uint32_t v) const;
  // Undirected degree, self-loop excluded.
  int plain_degree(std::uint32_t v) const;
};

inline constexpr std::size_t kMaxLatticeVertices = 10000000;

// Radius-`depth` ball of the q-regular tree; root is vertex 0, shells are
// contiguous index ranges, outermost shell is boundary.  Self-loops on every
// vertex iff q is even.
Lattice build_tree(int q, int depth);

// First `shells` shells of the {p,q} tessellation around a root, grown
// shell-by-shell by face-closing bookkeeping.  Requires the hyperbolic
// regime (p-2)(q-2) > 4.
Lattice build_hyperbolic(int p, int q, int shells);

// Periodic Euclidean tilings used as negative controls; no boundary.
// hex63 needs even width and height (brick-wall parity must close around
// both directions).
Lattice build_euclidean_torus(Tiling tiling, int width, int height);

// Toom's directed torus: out-edges to self, north, east.
Lattice build_toom(int width, int height);

// shell(v) = graph distance from root, self-loops ignored; throws if some
// vertex is unreachable.
Lattice classify_shells(Lattice lattice, std::uint32_t root);

std::vector<std::uint32_t> shell_sizes(const Lattice& lattice);

// Induced sublattice on {v : dist(root, v) <= t}; a cone vertex is boundary
// iff it was boundary already or lost a neighbor to the cut.  origin maps
// new indices back to the source lattice.
struct LightCone {
  Lattice lattice;
  std::vector<std::uint32_t> origin;
};

LightCone light_cone(const Lattice& lattice, std::uint32_t root, int t);

// Structural invariants: index validity, undirected symmetry, shell
// consistency across edges, boundary/degree coherence.  Throws on breach.
void validate(const Lattice& lattice);

}  // namespace camem
