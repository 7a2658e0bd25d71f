#include "camem/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <stdexcept>

namespace camem {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Undirected neighbor view (out plus in edges), self-loops dropped: shells
// and cones are graph-metric notions, for which a self-loop is inert.
std::vector<std::vector<std::uint32_t>> undirected_view(const Lattice& g) {
  std::vector<std::vector<std::uint32_t>> nb(g.size());
  for (std::uint32_t v = 0; v < g.size(); ++v)
    for (std::uint32_t w : g.out_edges[v]) {
      if (w == v) continue;
      nb[v].push_back(w);
      if (g.directed()) nb[w].push_back(v);
    }
  if (g.directed())
    for (auto& lst : nb) {
      std::sort(lst.begin(), lst.end());
      lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
  return nb;
}

std::vector<std::int32_t> bfs_distances(const Lattice& g, std::uint32_t root) {
  require(root < g.size(), "root index out of range");
  auto nb = undirected_view(g);
  std::vector<std::int32_t> dist(g.size(), -1);
  std::queue<std::uint32_t> frontier;
  dist[root] = 0;
  frontier.push(root);
  while (!frontier.empty()) {
    std::uint32_t v = frontier.front();
    frontier.pop();
    for (std::uint32_t w : nb[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
  }
  return dist;
}

int nominal_degree(const Lattice& g) {
  switch (g.kind) {
    case LatticeKind::tree: return g.q;
    case LatticeKind::hyperbolic: return g.q;
    case LatticeKind::euclidean:
      if (g.p == 4 && g.q == 4) return 4;
      if (g.p == 3 && g.q == 6) return 6;
      if (g.p == 6 && g.q == 3) return 3;
      throw std::invalid_argument("unsupported euclidean tiling");
    case LatticeKind::toom: return 3;
  }
  throw std::logic_error("invalid lattice kind");
}

}  // namespace

std::string to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::tree: return "tree";
    case LatticeKind::hyperbolic: return "hyperbolic";
    case LatticeKind::euclidean: return "euclidean";
    case LatticeKind::toom: return "toom";
  }
  throw std::logic_error("invalid lattice kind");
}

LatticeKind lattice_kind_from_string(const std::string& s) {
  if (s == "tree") return LatticeKind::tree;
  if (s == "hyperbolic") return LatticeKind::hyperbolic;
  if (s == "euclidean") return LatticeKind::euclidean;
  if (s == "toom") return LatticeKind::toom;
  throw std::invalid_argument("unknown lattice kind '" + s + "'");
}

std::string to_string(Tiling tiling) {
  switch (tiling) {
    case Tiling::square44: return "square44";
    case Tiling::tri36: return "tri36";
    case Tiling::hex63: return "hex63";
  }
  throw std::logic_error("invalid tiling");
}

Tiling tiling_from_string(const std::string& s) {
  if (s == "square44") return Tiling::square44;
  if (s == "tri36") return Tiling::tri36;
  if (s == "hex63") return Tiling::hex63;
  throw std::invalid_argument("unknown tiling '" + s + "'");
}

bool Lattice::has_self_loop(std::uint32_t v) const {
  for (std::uint32_t w : out_edges[v])
    if (w == v) return true;
  return false;
}

int Lattice::plain_degree(std::uint32_t v) const {
  int d = 0;
  for (std::uint32_t w : out_edges[v]) d += (w != v);
  return d;
}

Lattice build_tree(int q, int depth) {
  require(q >= 3, "tree branching q must be at least 3");
  require(depth >= 0, "tree depth must be nonnegative");

  Lattice g;
  g.kind = LatticeKind::tree;
  g.q = q;
  g.depth = depth;

  g.out_edges.emplace_back();
  g.shell.push_back(0);
  std::vector<std::uint32_t> prev{0};
  for (int s = 1; s <= depth; ++s) {
    std::vector<std::uint32_t> cur;
    std::size_t children = (s == 1) ? q : q - 1;
    for (std::uint32_t v : prev) {
      for (std::size_t c = 0; c < children; ++c) {
        require(g.size() < kMaxLatticeVertices, "tree exceeds the vertex cap");
        auto w = static_cast<std::uint32_t>(g.size());
        g.out_edges.emplace_back();
        g.shell.push_back(s);
        g.out_edges[v].push_back(w);
        g.out_edges[w].push_back(v);
        cur.push_back(w);
      }
    }
    prev = std::move(cur);
  }

  g.boundary.assign(g.size(), 0);
  for (std::uint32_t v = 0; v < g.size(); ++v)
    if (g.shell[v] == depth) g.boundary[v] = 1;
  if (q % 2 == 0)
    for (std::uint32_t v = 0; v < g.size(); ++v) g.out_edges[v].push_back(v);
  return g;
}

Lattice build_euclidean_torus(Tiling tiling, int width, int height) {
  require(width >= 4 && height >= 4, "torus dimensions must be at least 4");
  if (tiling == Tiling::hex63)
    require(width % 2 == 0 && height % 2 == 0,
            "hex63 needs even width and height (vertical-edge parity must "
            "close around the torus)");

  Lattice g;
  g.kind = LatticeKind::euclidean;
  g.width = width;
  g.height = height;
  switch (tiling) {
    case Tiling::square44: g.p = 4; g.q = 4; break;
    case Tiling::tri36: g.p = 3; g.q = 6; break;
    case Tiling::hex63: g.p = 6; g.q = 3; break;
  }

  std::size_t n = static_cast<std::size_t>(width) * height;
  require(n <= kMaxLatticeVertices, "torus exceeds the vertex cap");
  g.out_edges.resize(n);
  g.shell.assign(n, -1);
  g.boundary.assign(n, 0);

  auto id = [&](int x, int y) {
    x = (x % width + width) % width;
    y = (y % height + height) % height;
    return static_cast<std::uint32_t>(y * width + x);
  };

  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      auto& e = g.out_edges[id(x, y)];
      switch (tiling) {
        case Tiling::square44:
          e = {id(x + 1, y), id(x - 1, y), id(x, y + 1), id(x, y - 1)};
          break;
        case Tiling::tri36:
          e = {id(x + 1, y), id(x - 1, y), id(x, y + 1),
               id(x, y - 1), id(x + 1, y - 1), id(x - 1, y + 1)};
          break;
        case Tiling::hex63:
          // Brick wall: horizontal neighbors plus one vertical edge whose
          // direction alternates with the checkerboard parity of (x, y).
          e = {id(x + 1, y), id(x - 1, y),
               (x + y) % 2 == 0 ? id(x, y + 1) : id(x, y - 1)};
          break;
      }
      if (e.size() % 2 == 0) e.push_back(id(x, y));
    }
  return g;
}

Lattice build_toom(int width, int height) {
  require(width >= 2 && height >= 2, "toom dimensions must be at least 2");
  Lattice g;
  g.kind = LatticeKind::toom;
  g.width = width;
  g.height = height;
  std::size_t n = static_cast<std::size_t>(width) * height;
  require(n <= kMaxLatticeVertices, "torus exceeds the vertex cap");
  g.out_edges.resize(n);
  g.shell.assign(n, -1);
  g.boundary.assign(n, 0);
  auto id = [&](int x, int y) {
    x = (x % width + width) % width;
    y = (y % height + height) % height;
    return static_cast<std::uint32_t>(y * width + x);
  };
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      g.out_edges[id(x, y)] = {id(x, y), id(x, y + 1), id(x + 1, y)};
  return g;
}

Lattice classify_shells(Lattice lattice, std::uint32_t root) {
  auto dist = bfs_distances(lattice, root);
  for (std::size_t v = 0; v < dist.size(); ++v)
    if (dist[v] < 0)
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " is unreachable from the root");
  lattice.shell = std::move(dist);
  return lattice;
}

std::vector<std::uint32_t> shell_sizes(const Lattice& lattice) {
  std::int32_t top = -1;
  for (std::int32_t s : lattice.shell) {
    require(s >= 0, "shells are not set");
    top = std::max(top, s);
  }
  std::vector<std::uint32_t> sizes(top + 1, 0);
  for (std::int32_t s : lattice.shell) ++sizes[s];
  return sizes;
}

LightCone light_cone(const Lattice& lattice, std::uint32_t root, int t) {
  require(t >= 0, "light cone horizon must be nonnegative");
  bool shells_usable = root < lattice.size() && !lattice.shell.empty() &&
                       lattice.shell[root] == 0;
  if (shells_usable)
    for (std::int32_t s : lattice.shell) shells_usable = shells_usable && s >= 0;
  std::vector<std::int32_t> dist =
      shells_usable ? lattice.shell : bfs_distances(lattice, root);

  LightCone cone;
  std::vector<std::uint32_t> remap(lattice.size(), UINT32_MAX);
  // (distance, original index) order keeps shells contiguous and the
  // numbering stable.
  std::int32_t top = 0;
  for (std::int32_t s : dist)
    if (s > top) top = s;
  for (std::int32_t s = 0; s <= std::min<std::int32_t>(top, t); ++s)
    for (std::uint32_t v = 0; v < lattice.size(); ++v)
      if (dist[v] == s) {
        remap[v] = static_cast<std::uint32_t>(cone.origin.size());
        cone.origin.push_back(v);
      }

  Lattice& g = cone.lattice;
  g = Lattice{};
  g.kind = lattice.kind;
  g.p = lattice.p;
  g.q = lattice.q;
  g.width = lattice.width;
  g.height = lattice.height;
  g.depth = lattice.depth;
  // A cone of a root-centered ball is the smaller ball, so the radius
  // parameter tracks t; other kinds keep the source lattice's header fields.
  if ((lattice.kind == LatticeKind::tree || lattice.kind == LatticeKind::hyperbolic) &&
      root == 0)
    g.depth = std::min(lattice.depth, t);

  g.out_edges.resize(cone.origin.size());
  g.shell.resize(cone.origin.size());
  g.boundary.resize(cone.origin.size());
  for (std::uint32_t nv = 0; nv < cone.origin.size(); ++nv) {
    std::uint32_t ov = cone.origin[nv];
    g.shell[nv] = dist[ov];
    bool cut = lattice.boundary.empty() ? false : lattice.boundary[ov] != 0;
    for (std::uint32_t w : lattice.out_edges[ov]) {
      if (dist[w] > t || dist[w] < 0)
        cut = true;
      else
        g.out_edges[nv].push_back(remap[w]);
    }
    g.boundary[nv] = cut ? 1 : 0;
  }
  return cone;
}

void validate(const Lattice& g) {
  std::size_t n = g.size();
  require(g.shell.size() == n && g.boundary.size() == n,
          "lattice field lengths disagree");
  for (std::uint32_t v = 0; v < n; ++v) {
    int loops = 0;
    std::vector<std::uint32_t> seen;
    for (std::uint32_t w : g.out_edges[v]) {
      require(w < n, "edge endpoint out of range");
      if (w == v) {
        ++loops;
        continue;
      }
      seen.push_back(w);
      if (g.shell[v] >= 0 && g.shell[w] >= 0)
        require(std::abs(g.shell[v] - g.shell[w]) <= 1,
                "shell labels jump by more than one across an edge");
    }
    std::sort(seen.begin(), seen.end());
    require(std::adjacent_find(seen.begin(), seen.end()) == seen.end(),
            "duplicate out-edge");
    require(loops <= 1, "multiple self-loops on one vertex");
  }
  if (!g.directed()) {
    for (std::uint32_t v = 0; v < n; ++v)
      for (std::uint32_t w : g.out_edges[v]) {
        if (w == v) continue;
        bool back = false;
        for (std::uint32_t x : g.out_edges[w]) back = back || x == v;
        require(back, "undirected lattice is missing a reverse edge");
      }
    int nominal = nominal_degree(g);
    bool want_loop = nominal % 2 == 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      require(g.has_self_loop(v) == want_loop,
              "self-loop presence must match nominal degree parity");
      if (!g.boundary[v] && (g.kind == LatticeKind::tree ||
                             g.kind == LatticeKind::hyperbolic ||
                             g.kind == LatticeKind::euclidean))
        require(g.plain_degree(v) == nominal,
                "non-boundary vertex degree differs from the lattice degree");
    }
  } else {
    for (std::uint32_t v = 0; v < n; ++v)
      require(g.out_edges[v].size() == 3 && g.has_self_loop(v),
              "toom vertices read exactly self, north, east");
  }
}

}  // namespace camem
