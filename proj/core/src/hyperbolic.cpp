#include <algorithm>
#include <deque>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "camem/lattice.hpp"

// {p,q} generation by face closing on a combinatorial map.  Every vertex
// keeps its known neighbors as a contiguous counter-clockwise arc.  Arcs only
// ever grow at their ends, and each new arc adjacency is created by the face
// that closes the gap it spans, so interior arc gaps are closed faces by
// construction; the only open region at a vertex lies between the arc ends
// (the "wrap" gap once all q neighbors are known).  Closing the face after
// the arc's last neighbor therefore traces the face boundary through open
// wrap gaps only (combinatorial-map face tracing), then bridges the path
// ends with fresh chain vertices until the cycle has p corners.

namespace camem {

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

struct GrowVertex {
  std::deque<std::uint32_t> arc;  // CCW rotation, contiguous
  bool wrap_closed = false;       // face between arc back and arc front
};

class Builder {
 public:
  Builder(int p, int q) : p_(p), q_(q) {}

  std::uint32_t fresh() {
    if (verts_.size() >= kMaxLatticeVertices)
      throw std::invalid_argument("hyperbolic ball exceeds the vertex cap");
    verts_.push_back(GrowVertex{});
    return static_cast<std::uint32_t>(verts_.size() - 1);
  }

  int faces_closed(std::uint32_t v) const {
    const auto& gv = verts_[v];
    if (gv.arc.empty()) return 0;
    return static_cast<int>(gv.arc.size()) - 1 + (gv.wrap_closed ? 1 : 0);
  }

  bool complete(std::uint32_t v) const { return faces_closed(v) == q_; }

  bool wrap_open(std::uint32_t v) const {
    const auto& gv = verts_[v];
    return gv.arc.size() == static_cast<std::size_t>(q_) && !gv.wrap_closed;
  }

  // The face walk may only continue through a corner whose rotation already
  // pins the turn, which happens exactly at an open wrap gap: every interior
  // arc gap already carries a face, and a face is never built twice.
  std::uint32_t walk_forward(std::uint32_t corner, std::uint32_t from) const {
    const auto& gv = verts_[corner];
    if (wrap_open(corner) && gv.arc.back() == from) return gv.arc.front();
    return kNone;
  }

  std::uint32_t walk_backward(std::uint32_t corner, std::uint32_t from) const {
    const auto& gv = verts_[corner];
    if (wrap_open(corner) && gv.arc.front() == from) return gv.arc.back();
    return kNone;
  }

  // Closes the face occupying v's open gap after its last known neighbor
  // (or the wrap gap when the arc is full).
  void close_next_face(std::uint32_t v) {
    int before = faces_closed(v);
    if (verts_[v].arc.empty()) {
      // Root bootstrap: materialize the first edge, then close normally.
      std::uint32_t n0 = fresh();
      verts_[v].arc.push_back(n0);
      verts_[n0].arc.push_back(v);
    }

    // Face path c_0 .. c_{k-1} in rotation order: at each traversed corner
    // c_i, the face occupies the gap between c_{i-1} and c_{i+1}.  Seeded
    // with the edge (last-neighbor, v) and extended both ways while open
    // wrap gaps pin the walk.
    std::deque<std::uint32_t> path;
    path.push_back(verts_[v].arc.back());
    path.push_back(v);
    bool grew = true;
    while (grew) {
      grew = false;
      if (path.size() < static_cast<std::size_t>(p_)) {
        std::uint32_t b = walk_backward(path[0], path[1]);
        if (b != kNone) {
          path.push_front(b);
          grew = true;
        }
      }
      if (path.size() < static_cast<std::size_t>(p_)) {
        std::uint32_t f = walk_forward(path[path.size() - 1], path[path.size() - 2]);
        if (f != kNone) {
          path.push_back(f);
          grew = true;
        }
      }
    }

    std::uint32_t back_end = path.front();  // gains a neighbor at arc front
    std::uint32_t front_end = path.back();  // gains a neighbor at arc back

    if (path.size() == static_cast<std::size_t>(p_)) {
      // All corners exist; bridge the ends unless the closing edge is
      // already present (then both rotations are full and this face closes
      // their wrap gaps).
      bool have_edge = false;
      for (std::uint32_t w : verts_[front_end].arc)
        have_edge = have_edge || w == back_end;
      if (!have_edge) {
        attach_back(front_end, back_end);
        attach_front(back_end, front_end);
      }
    } else {
      // Chain of fresh corners from the front end around to the back end.
      std::size_t missing = p_ - path.size();
      std::uint32_t prev = front_end;
      for (std::size_t i = 0; i < missing; ++i) {
        std::uint32_t w = fresh();
        attach_back(prev, w);
        verts_[w].arc.push_back(prev);
        path.push_back(w);
        prev = w;
      }
      attach_back(prev, back_end);
      attach_front(back_end, prev);
    }

    // Record the wrap gaps this face consumed (triples in cyclic order).
    std::size_t k = path.size();
    for (std::size_t i = 0; i < k; ++i)
      note_gap_closed(path[i], path[(i + k - 1) % k], path[(i + 1) % k]);

    if (faces_closed(v) <= before)
      throw std::logic_error("face closing made no progress; map is inconsistent");
  }

  Lattice run(int shells) {
    fresh();  // root, index 0
    // Complete every vertex within distance shells-1 of the root, re-deriving
    // distances each round until the frontier is stable.
    while (true) {
      auto dist = distances();
      std::vector<std::uint32_t> todo;
      for (std::uint32_t v = 0; v < verts_.size(); ++v)
        if (dist[v] >= 0 && dist[v] <= shells - 1 && !complete(v)) todo.push_back(v);
      if (todo.empty()) break;
      std::stable_sort(todo.begin(), todo.end(),
                       [&](std::uint32_t a, std::uint32_t b) {
                         return std::make_pair(dist[a], a) < std::make_pair(dist[b], b);
                       });
      for (std::uint32_t v : todo)
        while (!complete(v)) close_next_face(v);
    }

    auto dist = distances();
    Lattice g;
    g.kind = LatticeKind::hyperbolic;
    g.p = p_;
    g.q = q_;
    g.depth = shells;

    // Keep the ball of radius `shells`, renumbered by (shell, creation order).
    std::vector<std::uint32_t> keep;
    for (std::int32_t s = 0; s <= shells; ++s)
      for (std::uint32_t v = 0; v < verts_.size(); ++v)
        if (dist[v] == s) keep.push_back(v);
    std::vector<std::uint32_t> remap(verts_.size(), kNone);
    for (std::uint32_t nv = 0; nv < keep.size(); ++nv) remap[keep[nv]] = nv;

    g.out_edges.resize(keep.size());
    g.shell.resize(keep.size());
    g.boundary.resize(keep.size());
    for (std::uint32_t nv = 0; nv < keep.size(); ++nv) {
      std::uint32_t ov = keep[nv];
      g.shell[nv] = dist[ov];
      g.boundary[nv] = dist[ov] == shells ? 1 : 0;
      for (std::uint32_t w : verts_[ov].arc)
        if (remap[w] != kNone) g.out_edges[nv].push_back(remap[w]);
      if (q_ % 2 == 0) g.out_edges[nv].push_back(nv);
    }
    return g;
  }

 private:
  void attach_back(std::uint32_t v, std::uint32_t w) {
    if (verts_[v].arc.size() >= static_cast<std::size_t>(q_))
      throw std::logic_error("vertex rotation overflow; map is inconsistent");
    verts_[v].arc.push_back(w);
  }

  void attach_front(std::uint32_t v, std::uint32_t w) {
    if (verts_[v].arc.size() >= static_cast<std::size_t>(q_))
      throw std::logic_error("vertex rotation overflow; map is inconsistent");
    verts_[v].arc.push_front(w);
  }

  void note_gap_closed(std::uint32_t v, std::uint32_t before,
                       std::uint32_t after) {
    auto& gv = verts_[v];
    if (gv.arc.size() == static_cast<std::size_t>(q_) && !gv.wrap_closed &&
        gv.arc.back() == before && gv.arc.front() == after)
      gv.wrap_closed = true;
  }

  std::vector<std::int32_t> distances() const {
    std::vector<std::int32_t> dist(verts_.size(), -1);
    std::queue<std::uint32_t> fr;
    dist[0] = 0;
    fr.push(0);
    while (!fr.empty()) {
      std::uint32_t v = fr.front();
      fr.pop();
      for (std::uint32_t w : verts_[v].arc)
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          fr.push(w);
        }
    }
    return dist;
  }

  int p_;
  int q_;
  std::vector<GrowVertex> verts_;
};

}  // namespace

Lattice build_hyperbolic(int p, int q, int shells) {
  if (p < 3 || q < 3) throw std::invalid_argument("{p,q} needs p, q >= 3");
  if ((p - 2) * (q - 2) <= 4)
    throw std::invalid_argument(
        "{" + std::to_string(p) + "," + std::to_string(q) +
        "} is not hyperbolic: need (p-2)(q-2) > 4");
  if (shells < 0) throw std::invalid_argument("shell count must be nonnegative");
  Builder b(p, q);
  return b.run(shells);
}

}  // namespace camem
