#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "camem/lattice.hpp"

using camem::Lattice;
using camem::LatticeKind;
using camem::Tiling;

TEST_CASE("tree ball: sizes, shells, degrees") {
  Lattice g = camem::build_tree(3, 2);
  REQUIRE(g.size() == 10);
  CHECK(camem::shell_sizes(g) == std::vector<std::uint32_t>{1, 3, 6});
  camem::validate(g);

  CHECK(g.out_edges[0].size() == 3);      // root: q children
  CHECK(g.out_edges[1].size() == 3);      // interior: parent + (q-1) children
  CHECK_FALSE(g.has_self_loop(0));        // odd q leaves the degree odd
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    CHECK(g.boundary[v] == (g.shell[v] == 2 ? 1 : 0));
    CHECK_FALSE(g.has_self_loop(v));
  }
}

TEST_CASE("even-q tree balls carry self-loops everywhere") {
  Lattice g = camem::build_tree(4, 2);
  REQUIRE(g.size() == 17);
  camem::validate(g);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    CHECK(g.has_self_loop(v));
    CHECK(g.plain_degree(v) == (g.shell[v] == 0 ? 4 : (g.shell[v] == 1 ? 4 : 1)));
  }
}

TEST_CASE("wide tree shell sizes") {
  Lattice g = camem::build_tree(31, 3);
  CHECK(camem::shell_sizes(g) ==
        std::vector<std::uint32_t>{1, 31, 930, 27900});
  camem::validate(g);
}

TEST_CASE("tree construction rejects bad parameters") {
  CHECK_THROWS_AS(camem::build_tree(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(camem::build_tree(3, -1), std::invalid_argument);
}

TEST_CASE("euclidean tori: degree per tiling, loops by parity") {
  Lattice sq = camem::build_euclidean_torus(Tiling::square44, 4, 4);
  REQUIRE(sq.size() == 16);
  camem::validate(sq);
  for (std::uint32_t v = 0; v < sq.size(); ++v) {
    CHECK(sq.plain_degree(v) == 4);
    CHECK(sq.has_self_loop(v));  // even degree needs a tie-breaking vote
    CHECK(sq.boundary[v] == 0);
  }

  Lattice tri = camem::build_euclidean_torus(Tiling::tri36, 4, 4);
  camem::validate(tri);
  for (std::uint32_t v = 0; v < tri.size(); ++v) {
    CHECK(tri.plain_degree(v) == 6);
    CHECK(tri.has_self_loop(v));
  }

  Lattice hex = camem::build_euclidean_torus(Tiling::hex63, 4, 4);
  camem::validate(hex);
  for (std::uint32_t v = 0; v < hex.size(); ++v) {
    CHECK(hex.plain_degree(v) == 3);
    CHECK_FALSE(hex.has_self_loop(v));
  }

  CHECK_THROWS_AS(camem::build_euclidean_torus(Tiling::hex63, 5, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(camem::build_euclidean_torus(Tiling::square44, 3, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(camem::build_euclidean_torus(Tiling::square44, 4000, 4000),
                  std::invalid_argument);  // vertex cap
}

TEST_CASE("toom torus reads self, north, east") {
  Lattice g = camem::build_toom(4, 4);
  REQUIRE(g.size() == 16);
  CHECK(g.directed());
  camem::validate(g);
  auto id = [](int x, int y) {
    return static_cast<std::uint32_t>(((y % 4 + 4) % 4) * 4 + (x % 4 + 4) % 4);
  };
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      const auto& out = g.out_edges[id(x, y)];
      REQUIRE(out.size() == 3);
      CHECK(out[0] == id(x, y));
      CHECK(out[1] == id(x, y + 1));
      CHECK(out[2] == id(x + 1, y));
    }
}

TEST_CASE("classify_shells recovers BFS distance") {
  Lattice g = camem::build_tree(3, 3);
  Lattice relabeled = camem::classify_shells(g, 0);
  CHECK(relabeled.shell == g.shell);

  // From a leaf the root sits `depth` shells away.
  Lattice from_leaf = camem::classify_shells(g, static_cast<std::uint32_t>(g.size() - 1));
  CHECK(from_leaf.shell[g.size() - 1] == 0);
  CHECK(from_leaf.shell[0] == 3);
}

TEST_CASE("light cone of a tree ball is an index prefix") {
  Lattice g = camem::build_tree(3, 4);
  camem::LightCone cone = camem::light_cone(g, 0, 2);
  REQUIRE(cone.lattice.size() == 10);
  for (std::uint32_t v = 0; v < cone.lattice.size(); ++v)
    CHECK(cone.origin[v] == v);
  CHECK(camem::shell_sizes(cone.lattice) == std::vector<std::uint32_t>{1, 3, 6});
  // Cut cells become boundary.
  for (std::uint32_t v = 0; v < cone.lattice.size(); ++v)
    CHECK(cone.lattice.boundary[v] == (cone.lattice.shell[v] == 2 ? 1 : 0));
}

TEST_CASE("light cones nest: smaller horizons are prefixes of larger ones") {
  Lattice g = camem::build_euclidean_torus(Tiling::square44, 8, 8);
  camem::LightCone small = camem::light_cone(g, 0, 2);
  camem::LightCone large = camem::light_cone(g, 0, 3);
  REQUIRE(small.lattice.size() == 13);   // 1 + 4 + 8
  REQUIRE(large.lattice.size() == 25);   // 1 + 4 + 8 + 12
  for (std::uint32_t v = 0; v < small.lattice.size(); ++v)
    CHECK(small.origin[v] == large.origin[v]);
  // Interior adjacency agrees on the shared prefix.
  for (std::uint32_t v = 0; v < small.lattice.size(); ++v) {
    if (small.lattice.boundary[v]) continue;
    CHECK(small.lattice.out_edges[v] == large.lattice.out_edges[v]);
    CHECK_FALSE(large.lattice.boundary[v]);
  }
}

TEST_CASE("light cone on a directed lattice keeps every dependency") {
  Lattice g = camem::build_toom(8, 8);
  camem::LightCone cone = camem::light_cone(g, 0, 2);
  for (std::uint32_t v = 0; v < cone.lattice.size(); ++v) {
    if (cone.lattice.boundary[v]) continue;
    // Non-boundary cells keep their full argument list.
    CHECK(cone.lattice.out_edges[v].size() ==
          g.out_edges[cone.origin[v]].size());
  }
}

TEST_CASE("validate flags broken invariants") {
  Lattice g = camem::build_tree(3, 2);

  Lattice asym = g;
  asym.out_edges[1].erase(
      std::find(asym.out_edges[1].begin(), asym.out_edges[1].end(), 0u));
  CHECK_THROWS_AS(camem::validate(asym), std::invalid_argument);

  Lattice dup = g;
  dup.out_edges[0].push_back(1);
  dup.out_edges[1].push_back(0);
  CHECK_THROWS_AS(camem::validate(dup), std::invalid_argument);

  Lattice loopy = g;
  loopy.out_edges[2].push_back(2);  // odd nominal degree forbids the loop
  CHECK_THROWS_AS(camem::validate(loopy), std::invalid_argument);

  Lattice range = g;
  range.out_edges[3].push_back(99);
  CHECK_THROWS_AS(camem::validate(range), std::invalid_argument);

  Lattice shells = g;
  shells.shell[5] = 9;  // adjacent shells may differ by at most one
  CHECK_THROWS_AS(camem::validate(shells), std::invalid_argument);
}
