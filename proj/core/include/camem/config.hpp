#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camem/engine.hpp"
#include "camem/faults.hpp"
#include "camem/lattice.hpp"

namespace camem {

struct LatticeSpec {
  LatticeKind kind = LatticeKind::tree;
  int q = 3;           // tree
  int depth = 2;       // tree depth / hyperbolic shells
  int p = 3;           // hyperbolic
  Tiling tiling = Tiling::square44;  // euclidean
  int width = 0;
  int height = 0;
};

struct RuleSpec {
  enum class Kind { majority, treeified, table };
  Kind kind = Kind::majority;
  int arity = 0;     // table rules
  std::string hex;   // table rules
};

std::string to_string(RuleSpec::Kind kind);

struct PlanSpec {
  enum class Observe { root, all, list };
  int horizon = 10;
  int replicates = 1000;
  Observe observe = Observe::root;
  std::vector<std::uint32_t> observed;  // used when observe == list
  BoundaryPolicy policy = BoundaryPolicy::clamp_to_error;
};

struct ExperimentConfig {
  LatticeSpec lattice;
  RuleSpec rules;
  FaultSpec fault;
  PlanSpec plan;
  std::uint64_t seed = 0;
  std::string out_dir;  // empty = caller decides
};

// JSON text -> validated config with defaults filled.  The fault block takes
// either xi or (alpha, beta); redundant values must agree to 1e-12, which
// makes parse(canonical_config(c)) == c.  Errors cite the offending field
// path.  Rejected at parse time: beta > 0 under pure_probabilistic,
// non-monotone tables under the adversarial model, combined rate >= 1/2.
ExperimentConfig parse_config(const std::string& text);

// Canonical JSON echo: defaults filled, keys sorted, fault block carrying
// alpha, beta, epsilon, and xi.  Idempotent under parse_config.
std::string canonical_config(const ExperimentConfig& config);

Lattice build_lattice(const LatticeSpec& spec);

// Resolve the plan's observed set against a concrete lattice.
std::vector<std::uint32_t> observed_vertices(const PlanSpec& plan,
                                             const Lattice& lattice);

}  // namespace camem
