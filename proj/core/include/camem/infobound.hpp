#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camem/engine.hpp"
#include "camem/lattice.hpp"

namespace camem {

// Automaton unrolled into a layered noisy circuit: layer s holds the cells
// whose time-s state the root's time-t state depends on; layer t is the root
// alone.  Wires point from a gate to each of its argument gates one layer
// down; layer-1 arguments all read the input terminal a (the all-a initial
// configuration), encoded as wire = -1.
struct CircuitGate {
  std::uint32_t cell = 0;
  int ones_threshold = 0;
  std::vector<std::int32_t> wires;  // index into previous layer, -1 = input a
};

struct LayeredCircuit {
  int t = 0;
  std::vector<std::vector<CircuitGate>> layers;  // layers[0] = layer 1

  std::size_t gate_count() const;
};

// Requires every cell within dependency distance t-1 of root to be
// non-boundary ("truncation too small" otherwise).
LayeredCircuit unroll_circuit(const Lattice& lattice, const CompiledRules& rules,
                              std::uint32_t root, int t);

// Number of distinct input-to-output wire paths, exactly (decimal string).
std::string count_paths(const LayeredCircuit& circuit);

// Sum over paths of (1-2eps)^(2 |p|), |p| = gates on the path; evaluated in
// log space by DP over layers, never materializing paths.
double es_bound(const LayeredCircuit& circuit, double epsilon);

// Exact I(X;Y) in bits for X uniform fed to the input terminal and every
// gate output complemented independently with probability epsilon, by
// exhaustive enumeration over fault patterns.  Gate count capped at 24.
double exact_mi(const LayeredCircuit& circuit, double epsilon);

inline constexpr int kExactMiMaxGates = 24;

struct FeasibilityVerdict {
  bool excluded = false;
  int excluded_at_t = -1;  // least horizon ruled out, when excluded
};

// If d (2 xi)^2 < 1, tolerance at some finite horizon is information-
// theoretically impossible: returns the least t with d^t (2 xi)^(2t)
// below the Fano floor 1 - h2(delta).
FeasibilityVerdict tolerance_feasible(long long d, double xi, double delta);

struct InfoBoundReport {
  long long d = 0;
  double xi = 0.0;
  double delta = 0.0;
  int t = 0;
  std::string path_count;
  double es = 0.0;
  double fano = 0.0;
  FeasibilityVerdict verdict;
};

// d-regular-tree unroll at horizon t evaluated against the Fano floor.
InfoBoundReport info_bound_report(long long d, double xi, double delta, int t);

}  // namespace camem
