#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "camem/analysis.hpp"
#include "camem/engine.hpp"
#include "camem/infobound.hpp"
#include "camem/lattice.hpp"
#include "camem/transition.hpp"

using camem::CircuitGate;
using camem::LayeredCircuit;
using camem::Lattice;

namespace {

Lattice lone_cell() {
  Lattice g;
  g.kind = camem::LatticeKind::tree;
  g.q = 1;
  g.out_edges = {{0}};
  g.shell = {0};
  g.boundary = {0};
  return g;
}

LayeredCircuit chain_circuit(int t) {
  Lattice g = lone_cell();
  return camem::unroll_circuit(g, camem::compile_majority(g), 0, t);
}

// Direct path enumeration: weight (1-2e)^(2L) per input-to-output path with
// L gates on it.
double es_by_enumeration(const LayeredCircuit& circuit, double eps) {
  double shrink2 = (1.0 - 2.0 * eps) * (1.0 - 2.0 * eps);
  std::vector<double> below;
  for (const auto& layer : circuit.layers) {
    std::vector<double> cur(layer.size(), 0.0);
    for (std::size_t g = 0; g < layer.size(); ++g) {
      double sum = 0.0;
      for (std::int32_t w : layer[g].wires) sum += w < 0 ? 1.0 : below[w];
      cur[g] = sum * shrink2;
    }
    below = std::move(cur);
  }
  double total = 0.0;
  for (double x : below) total += x;
  return total;
}

}  // namespace

TEST_CASE("identity chain: one path, geometric shrink, exact channel") {
  for (int t : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}) {
    LayeredCircuit c = chain_circuit(t);
    CHECK(c.gate_count() == static_cast<std::size_t>(t));
    CHECK(camem::count_paths(c) == "1");
    CHECK(camem::es_bound(c, 0.3) ==
          doctest::Approx(std::pow(0.4, 2 * t)).epsilon(1e-12));

    // The chain is a cascade of binary symmetric channels with crossover
    // (1 - 0.4^t) / 2.
    double cross = (1.0 - std::pow(0.4, t)) / 2.0;
    double closed = 1.0 - camem::binary_entropy(cross);
    CHECK(camem::exact_mi(c, 0.3) == doctest::Approx(closed).epsilon(1e-9));
    CHECK(camem::exact_mi(c, 0.3) <= camem::es_bound(c, 0.3) + 1e-9);
  }
}

TEST_CASE("frozen chain mutual information at eps = 0.3") {
  const double expect[10] = {
      0.118709100769, 0.018546104966, 0.002956659790, 0.000472793961,
      0.000075640092, 0.000012102237, 0.000001936353, 0.000000309816,
      0.000000049571, 0.000000007931};
  for (int t = 1; t <= 10; ++t)
    CHECK(camem::exact_mi(chain_circuit(t), 0.3) ==
          doctest::Approx(expect[t - 1]).epsilon(1e-6));
}

TEST_CASE("data processing: longer chains carry less information") {
  double prev = 1.0;
  for (int t = 1; t <= 8; ++t) {
    double mi = camem::exact_mi(chain_circuit(t), 0.1);
    CHECK(mi <= prev + 1e-12);
    prev = mi;
  }
}

TEST_CASE("ternary tree unroll at horizon two") {
  Lattice g = camem::build_tree(3, 2);
  LayeredCircuit c = camem::unroll_circuit(g, camem::compile_majority(g), 0, 2);
  REQUIRE(c.layers.size() == 2);
  CHECK(c.layers[1].size() == 1);
  CHECK(c.layers[0].size() == 3);
  CHECK(c.gate_count() == 4);
  // Layer-1 gates read the initial configuration only.
  for (const CircuitGate& gate : c.layers[0]) {
    CHECK(gate.wires == std::vector<std::int32_t>{-1, -1, -1});
    CHECK(gate.ones_threshold == 2);
  }
  // Cells are listed in ascending order.
  CHECK(c.layers[0][0].cell < c.layers[0][1].cell);
  CHECK(c.layers[0][1].cell < c.layers[0][2].cell);

  CHECK(camem::count_paths(c) == "9");
  for (double eps : {0.05, 0.2, 0.45}) {
    double es = camem::es_bound(c, eps);
    CHECK(es == doctest::Approx(9.0 * std::pow(1.0 - 2.0 * eps, 4))
                    .epsilon(1e-12));
    CHECK(es == doctest::Approx(es_by_enumeration(c, eps)).epsilon(1e-12));
    CHECK(camem::exact_mi(c, eps) <= es + 1e-9);
  }
  CHECK(camem::exact_mi(c, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(camem::es_bound(c, 0.5) == 0.0);
  CHECK(camem::exact_mi(c, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Toom unroll fans out like the regular tree") {
  Lattice g = camem::build_toom(8, 8);
  LayeredCircuit c = camem::unroll_circuit(g, camem::compile_majority(g), 0, 2);
  CHECK(camem::count_paths(c) == "9");
  CHECK(c.layers[0].size() == 3);
  CHECK(camem::es_bound(c, 0.2) ==
        doctest::Approx(camem::info_bound_report(3, 0.3, 0.25, 2).es)
            .epsilon(1e-12));
}

TEST_CASE("unroll rejects unusable inputs") {
  Lattice g = camem::build_tree(3, 4);
  camem::LightCone cone = camem::light_cone(g, 0, 2);
  auto rules = camem::compile_majority(cone.lattice);
  CHECK_NOTHROW(camem::unroll_circuit(cone.lattice, rules, 0, 2));
  try {
    camem::unroll_circuit(cone.lattice, rules, 0, 3);
    FAIL("expected a truncation error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("truncation too small") !=
          std::string::npos);
  }

  CHECK_THROWS_AS(camem::unroll_circuit(cone.lattice, rules, 0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(camem::unroll_circuit(cone.lattice, rules, 999, 2),
                  std::invalid_argument);

  Lattice toom = camem::build_toom(4, 4);
  auto table = camem::compile_table(toom, camem::BooleanTable::from_hex(3, "e8"));
  CHECK_THROWS_AS(camem::unroll_circuit(toom, table, 0, 2),
                  std::invalid_argument);
}

TEST_CASE("random layered circuits never beat the path bound") {
  std::mt19937 gen(2718);
  auto rnd = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  };
  for (int trial = 0; trial < 20; ++trial) {
    LayeredCircuit c;
    int depth = rnd(2, 4);
    c.t = depth;
    c.layers.resize(depth);
    std::size_t budget = 18;
    int prev_width = 0;
    for (int s = 0; s < depth; ++s) {
      int width = s == depth - 1 ? 1 : rnd(1, 4);
      width = std::min<int>(width, static_cast<int>(budget - (depth - 1 - s)));
      budget -= width;
      auto& layer = c.layers[s];
      layer.resize(width);
      for (CircuitGate& gate : layer) {
        int arity = rnd(1, 3);
        gate.ones_threshold = rnd(0, arity + 1);
        for (int i = 0; i < arity; ++i)
          gate.wires.push_back(
              s == 0 || rnd(0, 3) == 0 ? -1 : rnd(0, prev_width - 1));
      }
      prev_width = width;
    }
    REQUIRE(c.gate_count() <= 20);
    for (double eps : {0.1, 0.3, 0.45}) {
      double es = camem::es_bound(c, eps);
      CHECK(es == doctest::Approx(es_by_enumeration(c, eps)).epsilon(1e-10));
      CHECK(camem::exact_mi(c, eps) <= es + 1e-9);
    }
  }
}

TEST_CASE("feasibility verdicts") {
  camem::FeasibilityVerdict v = camem::tolerance_feasible(1, 0.3, 0.25);
  CHECK(v.excluded);
  CHECK(v.excluded_at_t == 2);  // first t with 0.36^t below 0.18872...

  v = camem::tolerance_feasible(1, 0.25, 0.25);
  CHECK(v.excluded);
  CHECK(v.excluded_at_t == 2);

  v = camem::tolerance_feasible(3, 0.3, 0.25);
  CHECK_FALSE(v.excluded);  // 3 * 0.6^2 = 1.08, no decay

  v = camem::tolerance_feasible(1, 0.5, 0.25);
  CHECK_FALSE(v.excluded);

  v = camem::tolerance_feasible(2, 0.0, 0.25);
  CHECK(v.excluded);
  CHECK(v.excluded_at_t == 1);

  CHECK_THROWS_AS(camem::tolerance_feasible(0, 0.3, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(camem::tolerance_feasible(1, 0.6, 0.25), std::invalid_argument);
}

TEST_CASE("degree-regular report") {
  camem::InfoBoundReport r = camem::info_bound_report(3, 0.1, 0.25, 4);
  CHECK(r.path_count == "81");
  CHECK(r.es == doctest::Approx(81.0 * std::pow(0.2, 8)).epsilon(1e-12));
  CHECK(r.fano == doctest::Approx(0.18872187554086717).epsilon(1e-12));
  CHECK(r.verdict.excluded);
  CHECK(r.verdict.excluded_at_t == 1);

  camem::InfoBoundReport big = camem::info_bound_report(10, 0.3, 0.25, 20);
  CHECK(big.path_count == "100000000000000000000");
}
