#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "camem/engine.hpp"

namespace camem {

namespace {

void check_plan(const SimPlan& plan) {
  if (plan.lattice == nullptr)
    throw std::invalid_argument("simulation plan lacks a lattice");
  if (plan.rules.size() != plan.lattice->size())
    throw std::invalid_argument("compiled rules do not match the lattice size");
  if (plan.horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  if (plan.replicates < 1) throw std::invalid_argument("need at least one replicate");
  if (plan.observed.empty())
    throw std::invalid_argument("observed set is empty");
  for (std::uint32_t v : plan.observed)
    if (v >= plan.lattice->size())
      throw std::invalid_argument("observed vertex out of range");
  plan.fault.validate();
}

int boundary_bit(const SimPlan& plan) {
  int a = plan.fault.remembered_bit;
  return plan.policy == BoundaryPolicy::clamp_to_a ? a : 1 - a;
}

}  // namespace

std::string to_string(BoundaryPolicy policy) {
  switch (policy) {
    case BoundaryPolicy::clamp_to_a: return "clamp_to_a";
    case BoundaryPolicy::clamp_to_error: return "clamp_to_error";
  }
  throw std::logic_error("unknown boundary policy");
}

BoundaryPolicy boundary_policy_from_string(const std::string& s) {
  if (s == "clamp_to_a") return BoundaryPolicy::clamp_to_a;
  if (s == "clamp_to_error") return BoundaryPolicy::clamp_to_error;
  throw std::invalid_argument("unknown boundary policy '" + s + "'");
}

CompiledRules compile_majority(const Lattice& lattice) {
  CompiledRules rules;
  std::size_t n = lattice.size();
  rules.input_offsets.reserve(n + 1);
  rules.input_offsets.push_back(0);
  rules.threshold.assign(n, 0);
  rules.evaluating.assign(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    int arity = static_cast<int>(lattice.out_edges[v].size());
    bool evaluating = lattice.boundary.empty() || !lattice.boundary[v];
    if (evaluating) {
      if (arity % 2 == 0)
        throw std::invalid_argument(
            "majority needs an odd vote count; vertex " + std::to_string(v) +
            " reads " + std::to_string(arity) + " cells");
      rules.threshold[v] = (arity + 1) / 2;
      rules.evaluating[v] = 1;
    }
    for (std::uint32_t w : lattice.out_edges[v]) rules.inputs.push_back(w);
    rules.input_offsets.push_back(static_cast<std::uint32_t>(rules.inputs.size()));
  }
  return rules;
}

CompiledRules compile_treeified(const TreeRuleSet& tree_rules, int remembered_bit) {
  if (remembered_bit != 0 && remembered_bit != 1)
    throw std::invalid_argument("remembered_bit must be 0 or 1");
  const Lattice& g = tree_rules.tree;
  CompiledRules rules;
  std::size_t n = g.size();
  rules.input_offsets.reserve(n + 1);
  rules.input_offsets.push_back(0);
  rules.threshold.assign(n, 0);
  rules.evaluating.assign(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (g.boundary.empty() || !g.boundary[v]) {
      rules.evaluating[v] = 1;
      if (remembered_bit == 0) {
        rules.threshold[v] = tree_rules.threshold[v];
      } else {
        // Deleted arguments hold worst-case 0-votes, so the retained inputs
        // must reach the original strict-majority count on their own.
        int arity = tree_rules.out_degree[v] + tree_rules.deletions[v];
        rules.threshold[v] = (arity + 2) / 2;
      }
    }
    for (std::uint32_t w : g.out_edges[v]) rules.inputs.push_back(w);
    rules.input_offsets.push_back(static_cast<std::uint32_t>(rules.inputs.size()));
  }
  return rules;
}

CompiledRules compile_table(const Lattice& lattice, const BooleanTable& table) {
  CompiledRules rules;
  std::size_t n = lattice.size();
  rules.input_offsets.reserve(n + 1);
  rules.input_offsets.push_back(0);
  rules.threshold.assign(n, 0);
  rules.evaluating.assign(n, 0);
  rules.table = table;
  for (std::uint32_t v = 0; v < n; ++v) {
    int arity = static_cast<int>(lattice.out_edges[v].size());
    bool evaluating = lattice.boundary.empty() || !lattice.boundary[v];
    if (evaluating) {
      if (arity != table.arity)
        throw std::invalid_argument(
            "table arity " + std::to_string(table.arity) +
            " does not match vertex " + std::to_string(v) + " with " +
            std::to_string(arity) + " inputs");
      rules.evaluating[v] = 1;
    }
    for (std::uint32_t w : lattice.out_edges[v]) rules.inputs.push_back(w);
    rules.input_offsets.push_back(static_cast<std::uint32_t>(rules.inputs.size()));
  }
  return rules;
}

std::vector<std::uint32_t> all_non_boundary(const Lattice& lattice) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < lattice.size(); ++v)
    if (lattice.boundary.empty() || !lattice.boundary[v]) out.push_back(v);
  return out;
}

Configuration::Configuration(std::size_t n_, int fill)
    : bits((n_ + 63) / 64, fill ? ~std::uint64_t{0} : 0), n(n_) {}

void step(const Configuration& cur, Configuration& next, const SimPlan& plan,
          const FaultRealization& realization, int t) {
  const CompiledRules& rules = plan.rules;
  int clamp = boundary_bit(plan);
  std::size_t n = rules.size();
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!rules.evaluating[v]) {
      next.set(v, clamp);
      continue;
    }
    int computed;
    std::uint32_t begin = rules.input_offsets[v];
    std::uint32_t end = rules.input_offsets[v + 1];
    if (rules.table) {
      std::uint32_t idx = 0;
      for (std::uint32_t i = begin; i < end; ++i)
        idx |= static_cast<std::uint32_t>(cur.get(rules.inputs[i])) << (i - begin);
      computed = rules.table->eval(idx) ? 1 : 0;
    } else {
      int ones = 0;
      for (std::uint32_t i = begin; i < end; ++i) ones += cur.get(rules.inputs[i]);
      computed = ones >= rules.threshold[v] ? 1 : 0;
    }
    bool fault = realization.transient(v, static_cast<std::uint32_t>(t));
    bool mfg = realization.manufacturing(v);
    next.set(v, apply_fault(computed, fault, mfg, plan.fault));
  }
}

std::vector<std::vector<std::uint8_t>> run_replicate(const SimPlan& plan,
                                                     std::uint32_t replicate) {
  check_plan(plan);
  std::size_t n = plan.lattice->size();
  int a = plan.fault.remembered_bit;
  FaultRealization realization(plan.fault, n, plan.seed, replicate);

  Configuration cur(n, a), next(n, a);
  std::vector<std::vector<std::uint8_t>> errors(
      plan.horizon + 1, std::vector<std::uint8_t>(plan.observed.size(), 0));
  for (std::size_t i = 0; i < plan.observed.size(); ++i)
    errors[0][i] = cur.get(plan.observed[i]) != a;
  for (int t = 1; t <= plan.horizon; ++t) {
    step(cur, next, plan, realization, t);
    std::swap(cur.bits, next.bits);
    for (std::size_t i = 0; i < plan.observed.size(); ++i)
      errors[t][i] = cur.get(plan.observed[i]) != a;
  }
  return errors;
}

double ErrorEstimate::mean_freq_at(int t) const {
  const auto& row = freq.at(t);
  double sum = 0.0;
  for (double f : row) sum += f;
  return row.empty() ? 0.0 : sum / static_cast<double>(row.size());
}

ErrorEstimate estimate_error(const SimPlan& plan) {
  check_plan(plan);
  std::size_t n = plan.lattice->size();
  int a = plan.fault.remembered_bit;
  int T = plan.horizon;
  std::size_t m = plan.observed.size();
  std::size_t R = static_cast<std::size_t>(plan.replicates);

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = plan.threads > 0 ? static_cast<std::size_t>(plan.threads)
                                         : std::max(1u, hw);
  workers = std::min(workers, R);

  // One integer count block per worker; summed in worker order afterwards,
  // so the result is independent of scheduling and of the worker count.
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>((T + 1) * m, 0));

  auto body = [&](std::size_t w) {
    std::size_t lo = R * w / workers;
    std::size_t hi = R * (w + 1) / workers;
    auto& counts = partial[w];
    Configuration cur(n, a), next(n, a);
    for (std::size_t r = lo; r < hi; ++r) {
      FaultRealization realization(plan.fault, n, plan.seed,
                                   static_cast<std::uint32_t>(r));
      for (std::size_t word = 0; word < cur.bits.size(); ++word)
        cur.bits[word] = a ? ~std::uint64_t{0} : 0;
      for (std::size_t i = 0; i < m; ++i)
        counts[i] += cur.get(plan.observed[i]) != a;
      for (int t = 1; t <= T; ++t) {
        step(cur, next, plan, realization, t);
        std::swap(cur.bits, next.bits);
        for (std::size_t i = 0; i < m; ++i)
          counts[t * m + i] += cur.get(plan.observed[i]) != a;
      }
    }
  };

  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& th : pool) th.join();
  }

  ErrorEstimate est;
  est.observed = plan.observed;
  est.horizon = T;
  est.replicates = plan.replicates;
  est.freq.assign(T + 1, std::vector<double>(m, 0.0));
  est.wilson_lo = est.freq;
  est.wilson_hi = est.freq;
  for (int t = 0; t <= T; ++t)
    for (std::size_t i = 0; i < m; ++i) {
      std::uint64_t hits = 0;
      for (std::size_t w = 0; w < workers; ++w) hits += partial[w][t * m + i];
      est.freq[t][i] = static_cast<double>(hits) / static_cast<double>(R);
      WilsonInterval ci = wilson95(hits, R);
      est.wilson_lo[t][i] = ci.lo;
      est.wilson_hi[t][i] = ci.hi;
    }
  return est;
}

std::string error_estimate_csv(const ErrorEstimate& est) {
  std::ostringstream out;
  out.precision(17);
  out << "t,vertex,freq,wilson_lo,wilson_hi,replicates\n";
  for (int t = 0; t <= est.horizon; ++t)
    for (std::size_t i = 0; i < est.observed.size(); ++i)
      out << t << ',' << est.observed[i] << ',' << est.freq[t][i] << ','
          << est.wilson_lo[t][i] << ',' << est.wilson_hi[t][i] << ','
          << est.replicates << '\n';
  return out.str();
}

std::vector<double> exact_tree_marginal(int d, int h, const FaultSpec& spec, int T) {
  spec.validate();
  if (spec.beta != 0.0)
    throw std::invalid_argument(
        "the scalar recursion needs i.i.d. inputs; beta must be 0");
  if (d < 1 || h < 0 || T < 0)
    throw std::invalid_argument("exact_tree_marginal needs d >= 1, h >= 0, T >= 0");
  double eps = spec.epsilon();
  RecursionMode mode = spec.model == FaultModel::adversarial
                           ? RecursionMode::exact_greedy
                           : RecursionMode::exact_pure;
  std::vector<double> p(T + 1, 0.0);
  for (int t = 1; t <= T; ++t)
    p[t] = recursion_step(p[t - 1], d, h, eps, mode);
  return p;
}

WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  // Upper 2.5% quantile of the standard normal.
  constexpr double z = 1.959963984540054;
  double nn = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / nn;
  double z2n = z * z / nn;
  double denom = 1.0 + z2n;
  double center = (phat + z2n / 2.0) / denom;
  double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2n / (4.0 * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace camem
