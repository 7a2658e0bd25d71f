// Acceptance harness: ten end-to-end criteria, one PASS/FAIL line each,
// nonzero exit if any fails.  Tolerances and seeds are pinned here so reruns
// are bit-for-bit comparable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "camem/analysis.hpp"
#include "camem/engine.hpp"
#include "camem/faults.hpp"
#include "camem/infobound.hpp"
#include "camem/lattice.hpp"
#include "camem/transition.hpp"
#include "camem/treeify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const char* id, bool pass, const std::string& detail) {
  std::printf("%s %s - %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

camem::Lattice lone_cell() {
  camem::Lattice g;
  g.kind = camem::LatticeKind::tree;
  g.q = 1;
  g.out_edges = {{0}};
  g.shell = {0};
  g.boundary = {0};
  return g;
}

camem::LayeredCircuit chain_circuit(int t) {
  camem::Lattice g = lone_cell();
  return camem::unroll_circuit(g, camem::compile_majority(g), 0, t);
}

// A1: at margin xi = 0.4 the closed-form sufficiency gives odd q = 31, the
// iterated majorant confirms (31, 16) and rejects (11, 6); both in under a
// second.
void a1() {
  auto t0 = Clock::now();
  camem::ParityBounds need = camem::min_q_regular_tree(0.4);
  bool ok = need.odd_q == 31;

  camem::RecursionParams good;
  good.d = 31;
  good.h = 16;
  good.m = 1;  // odd-q tree accounting loses exactly one vote per cell
  good.xi = 0.4;
  camem::RecursionTrace tr = camem::iterate_recursion(good);
  ok = ok && tr.tolerant && tr.converged && tr.delta == 0.3;
  for (double p : tr.p) ok = ok && p <= 0.3;
  double fp = tr.fixed_point;

  camem::RecursionParams bad = good;
  bad.d = 11;
  bad.h = 6;
  camem::RecursionTrace tr_bad = camem::iterate_recursion(bad);
  ok = ok && !tr_bad.tolerant && tr_bad.violated_at > 0;

  double dt = seconds_since(t0);
  ok = ok && dt < 1.0;
  report("A1", ok,
         fmt("min odd q = %lld; (31,16,m=1) tolerant, fixed point %.9g; "
             "(11,6,m=1) violated at t=%d; %.3f s",
             need.odd_q, fp, tr_bad.violated_at, dt));
}

// A2: Monte Carlo on the treeified radius-3 ball of the 31-regular tree vs
// the exact scalar recursion taken at the root children's (d, h) = (30, 15).
void a2() {
  camem::Lattice ball = camem::build_tree(31, 3);
  camem::TreeRuleSet tree_rules = camem::treeify(ball, 0);

  camem::SimPlan plan;
  plan.lattice = &ball;
  plan.rules = camem::compile_treeified(tree_rules, 0);
  plan.fault.model = camem::FaultModel::adversarial;
  plan.fault.alpha = 0.1;
  plan.horizon = 3;
  plan.replicates = 10000;
  plan.observed = {0};
  plan.seed = 2026;
  plan.threads = 0;

  std::uint32_t child = tree_rules.tree.out_edges[0][0];
  int d_child = static_cast<int>(plan.rules.input_offsets[child + 1] -
                                 plan.rules.input_offsets[child]);
  int h_child = plan.rules.threshold[child];
  bool ok = ball.size() == 28862 && d_child == 30 && h_child == 15;

  camem::ErrorEstimate est = camem::estimate_error(plan);
  std::vector<double> exact =
      camem::exact_tree_marginal(d_child, h_child, plan.fault, 3);
  for (int t = 1; t <= 3; ++t)
    ok = ok && est.wilson_lo[t][0] <= exact[t] && exact[t] <= est.wilson_hi[t][0];

  report("A2", ok,
         fmt("28862 cells, child rule (%d,%d); root freq {%.4f, %.4f, %.4f} vs "
             "exact {%.4f, %.6f, %.6f}, all inside Wilson 95%%",
             d_child, h_child, est.freq[1][0], est.freq[2][0], est.freq[3][0],
             exact[1], exact[2], exact[3]));
}

// A3: transient and manufacturing faults combined to the same rate 0.1; the
// manufacturing set is redrawn each replicate by construction of the fault
// stream.
void a3() {
  double ab = 0.05131670194948623;  // 1 - (1-ab)^2 = 0.1
  bool ok = std::fabs(camem::combined_rate(ab, ab) - 0.1) <= 1e-12;

  camem::Lattice ball = camem::build_tree(31, 3);
  camem::SimPlan plan;
  plan.lattice = &ball;
  plan.rules = camem::compile_treeified(camem::treeify(ball, 0), 0);
  plan.fault.model = camem::FaultModel::adversarial;
  plan.fault.alpha = ab;
  plan.fault.beta = ab;
  plan.horizon = 3;
  plan.replicates = 10000;
  plan.observed = {0};
  plan.seed = 2027;
  plan.threads = 0;

  camem::ErrorEstimate est = camem::estimate_error(plan);
  double half = (est.wilson_hi[3][0] - est.wilson_lo[3][0]) / 2.0;
  ok = ok && est.freq[3][0] <= 0.3 + half;
  report("A3", ok,
         fmt("alpha = beta = %.17g, combined 0.1; root freq at t=3: %.4f <= "
             "0.3 + %.4f",
             ab, est.freq[3][0], half));
}

camem::ErrorEstimate run_torus(const camem::Lattice& lattice, double alpha,
                               std::uint64_t seed) {
  camem::SimPlan plan;
  plan.lattice = &lattice;
  plan.rules = camem::compile_majority(lattice);
  plan.fault.model = camem::FaultModel::pure_probabilistic;
  plan.fault.alpha = alpha;
  plan.horizon = 200;
  plan.replicates = 20;
  plan.observed = camem::all_non_boundary(lattice);
  plan.seed = seed;
  plan.threads = 0;
  return camem::estimate_error(plan);
}

// A4: the {4,4} torus forgets at rate 0.3 - mean error drifts toward 1/2.
void a4() {
  auto t0 = Clock::now();
  camem::Lattice torus =
      camem::build_euclidean_torus(camem::Tiling::square44, 64, 64);
  camem::ErrorEstimate est = run_torus(torus, 0.3, 2028);
  double mean = est.mean_freq_at(200);
  double dt = seconds_since(t0);
  bool ok = mean >= 0.4 && dt < 60.0;
  report("A4", ok,
         fmt("{4,4} 64x64 at rate 0.3: mean cell error %.4f >= 0.4 at t=200 "
             "(20 replicates, %.1f s)",
             mean, dt));
}

// A5: Toom's rule holds the line at rate 0.02 but not at 0.3.
void a5() {
  camem::Lattice toom = camem::build_toom(64, 64);
  double low = run_torus(toom, 0.02, 2029).mean_freq_at(200);
  double high = run_torus(toom, 0.3, 2030).mean_freq_at(200);
  bool ok = low <= 0.1 && high >= 0.4;
  report("A5", ok,
         fmt("Toom 64x64 at t=200: rate 0.02 -> mean error %.4f <= 0.1; "
             "rate 0.3 -> %.4f >= 0.4",
             low, high));
}

// A6: information floor d = 100 at xi = 0.05; chain circuits match the
// composed-channel closed form and respect the path bound; d = 1 at xi = 0.3
// is excluded at the first horizon where 0.36^t undercuts the Fano floor.
void a6() {
  auto t0 = Clock::now();
  bool ok = camem::info_lower_min_degree(0.05) == 100;

  for (int t = 1; t <= 10; ++t) {
    camem::LayeredCircuit c = chain_circuit(t);
    double mi = camem::exact_mi(c, 0.3);
    double es = camem::es_bound(c, 0.3);
    double closed = 1.0 - camem::binary_entropy((1.0 - std::pow(0.4, t)) / 2.0);
    ok = ok && std::fabs(mi - closed) <= 1e-9;
    ok = ok && std::fabs(es - std::pow(0.4, 2 * t)) <= 1e-12;
    ok = ok && mi <= es + 1e-9;
  }

  int expect_t = 1;
  while (std::pow(0.36, expect_t) >= camem::fano_floor(0.25)) ++expect_t;
  camem::FeasibilityVerdict v = camem::tolerance_feasible(1, 0.3, 0.25);
  ok = ok && v.excluded && v.excluded_at_t == expect_t;

  double dt = seconds_since(t0);
  ok = ok && dt < 1.0;
  report("A6", ok,
         fmt("min degree at xi=0.05: 100; chain t=1..10 matches composed "
             "channel to 1e-9 under the path bound; d=1 xi=0.3 excluded at "
             "t=%d (first 0.36^t < %.4f); %.3f s",
             v.excluded_at_t, camem::fano_floor(0.25), dt));
}

// A7: random layered circuits never exceed the path bound.
void a7() {
  std::mt19937 gen(31415);
  auto rnd = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  };
  bool ok = true;
  double worst = -1.0;
  for (int trial = 0; trial < 100; ++trial) {
    camem::LayeredCircuit c;
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
      for (camem::CircuitGate& gate : layer) {
        int arity = rnd(1, 3);
        gate.ones_threshold = rnd(0, arity + 1);
        for (int i = 0; i < arity; ++i)
          gate.wires.push_back(
              s == 0 || rnd(0, 3) == 0 ? -1 : rnd(0, prev_width - 1));
      }
      prev_width = width;
    }
    ok = ok && c.gate_count() <= 20;
    for (double eps : {0.1, 0.3, 0.45}) {
      double slack = camem::exact_mi(c, eps) - camem::es_bound(c, eps);
      worst = std::max(worst, slack);
      ok = ok && slack <= 1e-9;
    }
  }
  report("A7", ok,
         fmt("100 random circuits (<= 20 gates) x rates {0.1, 0.3, 0.45}: "
             "max exact_mi - es_bound = %.3g",
             worst));
}

// A8: q_min(xi) * 4 xi^2 grows slowly in 1/xi - successive ratios stay in
// [1.05, 3.0], the logarithmic gap between the two bounds.
void a8() {
  const double xis[4] = {0.4, 0.2, 0.1, 0.05};
  const double frozen[4] = {19.84, 24.48, 29.64, 35.09};
  double prod[4];
  bool ok = true;
  for (int i = 0; i < 4; ++i) {
    long long q = camem::min_q_regular_tree(xis[i]).odd_q;
    prod[i] = static_cast<double>(q) * 4.0 * xis[i] * xis[i];
    ok = ok && std::fabs(prod[i] - frozen[i]) <= 1e-9;
  }
  for (int i = 1; i < 4; ++i) {
    double ratio = prod[i] / prod[i - 1];
    ok = ok && ratio >= 1.05 && ratio <= 3.0;
  }
  report("A8", ok,
         fmt("q(xi) * 4 xi^2 over xi = {0.4, 0.2, 0.1, 0.05}: %.2f, %.2f, "
             "%.2f, %.2f; ratios within [1.05, 3.0]",
             prod[0], prod[1], prod[2], prod[3]));
}

// A9: deletion budgets of the tessellation reductions at five shells.
void a9() {
  struct Case {
    int p, q, shells, budget;
  };
  const Case cases[3] = {{3, 7, 5, 5}, {4, 5, 5, 5}, {4, 6, 5, 6}};
  bool ok = true;
  int got[3];
  for (int i = 0; i < 3; ++i) {
    camem::Lattice ball =
        camem::build_hyperbolic(cases[i].p, cases[i].q, cases[i].shells);
    camem::TreeRuleSet rules = camem::treeify(ball, 0);
    got[i] = rules.max_deletions;
    ok = ok && got[i] <= cases[i].budget;
  }
  report("A9", ok,
         fmt("max r over non-boundary cells at 5 shells: {3,7} -> %d <= 5, "
             "{4,5} -> %d <= 5, {4,6} -> %d <= 6",
             got[0], got[1], got[2]));
}

// Depth-2 degree-3 instance used for the exhaustive A10 checks: the root
// votes over three leaves with threshold 2; a leaf re-evaluates to 0 unless
// faulted.  One step maps a 4-bit configuration (bit 0 = root) under a 4-bit
// fault mask, faults forcing 1.
unsigned tiny_step(unsigned config, unsigned faults) {
  int votes = (config >> 1 & 1) + (config >> 2 & 1) + (config >> 3 & 1);
  unsigned next = votes >= 2 ? 1u : 0u;  // leaves recompute 0
  return next | faults;
}

// Root value after two steps from all-zero when the adversary answers fault
// slot 4*(t-1)+v with the corresponding bit of `values`.
int tiny_outcome(unsigned pattern, unsigned values) {
  unsigned config = 0;
  for (int step = 0; step < 2; ++step) {
    unsigned mask = pattern >> (4 * step) & 0xf;
    unsigned chosen = values >> (4 * step) & 0xf;
    int votes = (config >> 1 & 1) + (config >> 2 & 1) + (config >> 3 & 1);
    unsigned computed = votes >= 2 ? 1u : 0u;
    config = (computed & ~mask & 1u) | (chosen & mask);
  }
  return config & 1;
}

// A10: module invariants - binomial tail vs direct sum, induction closure at
// the minimum degree, light-cone invariance replicate by replicate, and the
// exhaustive coupling/adversary checks on the tiny instance.
void a10() {
  // Binomial tail against the direct sum, d <= 12.
  bool bintail = true;
  for (int d = 0; d <= 12 && bintail; ++d) {
    long double choose[13] = {1.0L};
    for (int j = 1; j <= d; ++j) choose[j] = 0.0L;
    for (int row = 1; row <= d; ++row)
      for (int j = row; j >= 1; --j) choose[j] += choose[j - 1];
    for (double p : {0.1, 0.3, 0.5})
      for (int h = 0; h <= d + 1; ++h) {
        long double direct = 0.0L;
        for (int j = h; j <= d; ++j)
          direct += choose[j] * std::pow((long double)p, j) *
                    std::pow((long double)(1.0 - p), d - j);
        if (std::fabs(camem::binomial_tail(d, h, p) -
                      static_cast<double>(direct)) > 1e-12)
          bintail = false;
      }
  }

  // Induction closure: at d = min_degree_directed_tree(xi, m) the majorant
  // maps [0, delta] into itself.
  bool closure = true;
  std::mt19937 gen(424242);
  std::uniform_real_distribution<double> xi_dist(0.02, 0.5);
  std::uniform_int_distribution<int> m_dist(0, 3);
  for (int i = 0; i < 200; ++i) {
    double xi = xi_dist(gen);
    int m = m_dist(gen);
    long long d = camem::min_degree_directed_tree(xi, m);
    double delta = 0.5 - xi / 2.0;
    double eps = 0.5 - xi;
    if (camem::majorant_step(delta, static_cast<int>(d), m, eps) > delta)
      closure = false;
    if (camem::induction_gap(xi, m, static_cast<int>(d)) < 0.0) closure = false;
  }

  // Light cone: the radius-2 cone reproduces the full-lattice root
  // trajectory replicate by replicate through t = 2.
  bool cone_ok = true;
  {
    camem::Lattice full = camem::build_tree(3, 4);
    camem::LightCone cone = camem::light_cone(full, 0, 2);
    camem::SimPlan pf, pc;
    pf.lattice = &full;
    pf.rules = camem::compile_majority(full);
    pc.lattice = &cone.lattice;
    pc.rules = camem::compile_majority(cone.lattice);
    for (camem::SimPlan* plan : {&pf, &pc}) {
      plan->fault.model = camem::FaultModel::adversarial;
      plan->fault.alpha = 0.1;
      plan->horizon = 2;
      plan->observed = {0};
      plan->seed = 11;
    }
    for (std::uint32_t rep = 0; rep < 50 && cone_ok; ++rep)
      cone_ok = camem::run_replicate(pf, rep) == camem::run_replicate(pc, rep);
  }

  // Exhaustive monotone coupling on the tiny instance, plus the same
  // property through the engine's step on the 3-regular tree.
  bool coupling = true;
  for (unsigned lo = 0; lo < 16; ++lo)
    for (unsigned hi = 0; hi < 16; ++hi) {
      if ((lo | hi) != hi) continue;
      for (unsigned f = 0; f < 16; ++f) {
        unsigned nlo = tiny_step(lo, f), nhi = tiny_step(hi, f);
        if ((nlo | nhi) != nhi) coupling = false;
      }
    }
  {
    camem::Lattice g = camem::build_tree(3, 2);
    camem::SimPlan plan;
    plan.lattice = &g;
    plan.rules = camem::compile_majority(g);
    plan.fault.model = camem::FaultModel::adversarial;
    plan.fault.alpha = 0.3;
    camem::FaultRealization real(plan.fault, g.size(), 77, 3);
    std::mt19937 cfg_gen(8888);
    for (int trial = 0; trial < 200; ++trial) {
      camem::Configuration lo(g.size()), hi(g.size()), nlo(g.size()),
          nhi(g.size());
      for (std::uint32_t v = 0; v < g.size(); ++v) {
        int hb = cfg_gen() & 1;
        int lb = hb & static_cast<int>(cfg_gen() & 1);
        hi.set(v, hb);
        lo.set(v, lb);
      }
      camem::step(lo, nlo, plan, real, 1);
      camem::step(hi, nhi, plan, real, 1);
      for (std::uint32_t v = 0; v < g.size(); ++v)
        if (nlo.get(v) > nhi.get(v)) coupling = false;
    }
  }

  // Greedy adversary is optimal: for every fault pattern, answering 1
  // everywhere maximizes the root error at t = 2.
  bool greedy = true;
  for (unsigned pattern = 0; pattern < 256; ++pattern) {
    int best = 0;
    for (unsigned values = 0; values < 256; ++values)
      best = std::max(best, tiny_outcome(pattern, values));
    if (tiny_outcome(pattern, 0xff) != best) greedy = false;
  }

  bool ok = bintail && closure && cone_ok && coupling && greedy;
  report("A10", ok,
         fmt("binomial tail %s; induction closure %s (200 points); light cone "
             "%s (50 replicates); monotone coupling %s; greedy adversary "
             "optimal %s (256 patterns x 256 strategies)",
             bintail ? "ok" : "BROKEN", closure ? "ok" : "BROKEN",
             cone_ok ? "ok" : "BROKEN", coupling ? "ok" : "BROKEN",
             greedy ? "ok" : "BROKEN"));
}

}  // namespace

int main() {
  a1();
  a2();
  a3();
  a4();
  a5();
  a6();
  a7();
  a8();
  a9();
  a10();
  if (failures) std::printf("acceptance: %d criteria FAILED\n", failures);
  else std::printf("acceptance: all 10 criteria passed\n");
  return failures ? 1 : 0;
}
