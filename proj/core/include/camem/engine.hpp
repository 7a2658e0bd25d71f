#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "camem/analysis.hpp"
#include "camem/faults.hpp"
#include "camem/lattice.hpp"
#include "camem/transition.hpp"
#include "camem/treeify.hpp"

namespace camem {

enum class BoundaryPolicy { clamp_to_a, clamp_to_error };

std::string to_string(BoundaryPolicy policy);
BoundaryPolicy boundary_policy_from_string(const std::string& s);

// Per-vertex evaluation plan compiled to CSR form: each evaluating cell
// reads `inputs` and applies either its ones-threshold or a shared truth
// table (inputs in argument order).  Boundary cells never evaluate.
struct CompiledRules {
  std::vector<std::uint32_t> input_offsets;  // size n+1
  std::vector<std::uint32_t> inputs;
  std::vector<std::int32_t> threshold;       // ones needed, by vertex
  std::optional<BooleanTable> table;         // set for table rules
  std::vector<std::uint8_t> evaluating;      // 0 = boundary

  std::size_t size() const { return evaluating.size(); }
};

// Full majority over out-edges (self-loop included); every evaluating
// vertex must have odd in-rule arity.
CompiledRules compile_majority(const Lattice& lattice);
// Treeified thresholds for the given remembered bit (a=0 is the canonical
// constant-1 accounting; a=1 mirrors it by self-duality).
CompiledRules compile_treeified(const TreeRuleSet& rules, int remembered_bit);
// One shared truth table; every evaluating vertex must have matching degree.
CompiledRules compile_table(const Lattice& lattice, const BooleanTable& table);

struct SimPlan {
  const Lattice* lattice = nullptr;
  CompiledRules rules;
  FaultSpec fault;
  int horizon = 10;
  int replicates = 1000;
  std::vector<std::uint32_t> observed;  // vertex ids
  std::uint64_t seed = 0;
  BoundaryPolicy policy = BoundaryPolicy::clamp_to_error;
  int threads = 0;  // 0 = hardware concurrency
};

std::vector<std::uint32_t> all_non_boundary(const Lattice& lattice);

// Bit-packed synchronous update of one configuration (time t -> t+1).
// Exposed for exhaustive small-instance tests.
struct Configuration {
  std::vector<std::uint64_t> bits;
  std::size_t n = 0;

  explicit Configuration(std::size_t n_ = 0, int fill = 0);
  int get(std::uint32_t v) const { return bits[v >> 6] >> (v & 63) & 1; }
  void set(std::uint32_t v, int b) {
    std::uint64_t m = std::uint64_t{1} << (v & 63);
    if (b) bits[v >> 6] |= m; else bits[v >> 6] &= ~m;
  }
};

void step(const Configuration& cur, Configuration& next, const SimPlan& plan,
          const FaultRealization& realization, int t);

// Error bits (state != remembered bit) for the observed cells at each time
// 0..horizon of one replicate.
std::vector<std::vector<std::uint8_t>> run_replicate(const SimPlan& plan,
                                                     std::uint32_t replicate);

struct ErrorEstimate {
  std::vector<std::uint32_t> observed;
  int horizon = 0;
  int replicates = 0;
  // freq[t][i]: error frequency of observed[i] at time t, and the Wilson
  // 95% interval around it.
  std::vector<std::vector<double>> freq, wilson_lo, wilson_hi;

  double mean_freq_at(int t) const;
};

// Monte Carlo over replicates (fresh manufacturing sample each); replicate
// counts are integers summed in fixed order, so any thread count produces
// bit-identical results.
ErrorEstimate estimate_error(const SimPlan& plan);

std::string error_estimate_csv(const ErrorEstimate& estimate);

// Exact per-time root error marginal on the uniform directed tree (d inputs,
// threshold h) where input errors are i.i.d. — the scalar recursion is exact
// because subtree events are independent.  Requires beta = 0.
std::vector<double> exact_tree_marginal(int d, int h, const FaultSpec& spec, int T);

struct WilsonInterval {
  double lo = 0.0, hi = 0.0;
};
WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials);

}  // namespace camem
