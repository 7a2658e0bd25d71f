#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "camem/infobound.hpp"

namespace camem {

namespace {

using BigInt = boost::multiprecision::cpp_int;

long double entropy_bits(long double p) {
  if (p <= 0.0L || p >= 1.0L) return 0.0L;
  return -(p * std::log2(p) + (1.0L - p) * std::log2(1.0L - p));
}

double log_sum_exp(const std::vector<double>& xs) {
  double mx = -HUGE_VAL;
  for (double x : xs) mx = std::max(mx, x);
  if (mx == -HUGE_VAL) return -HUGE_VAL;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - mx);
  return mx + std::log(sum);
}

}  // namespace

std::size_t LayeredCircuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.size();
  return n;
}

LayeredCircuit unroll_circuit(const Lattice& lattice, const CompiledRules& rules,
                              std::uint32_t root, int t) {
  if (t < 1) throw std::invalid_argument("unroll horizon must be at least 1");
  if (root >= lattice.size())
    throw std::invalid_argument("unroll root out of range");
  if (rules.size() != lattice.size())
    throw std::invalid_argument("compiled rules do not match the lattice size");
  if (rules.table)
    throw std::invalid_argument("unrolling supports threshold rules only");

  // Cells per layer, top down: layer t is the root, layer s-1 the union of
  // the inputs read by layer s.  Cell order within a layer is ascending, so
  // the circuit is canonical for a given (lattice, root, t).
  std::vector<std::vector<std::uint32_t>> cells(t + 1);
  cells[t] = {root};
  for (int s = t; s >= 1; --s) {
    for (std::uint32_t cell : cells[s])
      if (!rules.evaluating[cell])
        throw std::invalid_argument(
            "truncation too small: cell " + std::to_string(cell) +
            " at dependency distance " + std::to_string(t - s) +
            " is a boundary cell");
    if (s == 1) break;
    std::vector<std::uint32_t> below;
    for (std::uint32_t cell : cells[s])
      for (std::uint32_t i = rules.input_offsets[cell];
           i < rules.input_offsets[cell + 1]; ++i)
        below.push_back(rules.inputs[i]);
    std::sort(below.begin(), below.end());
    below.erase(std::unique(below.begin(), below.end()), below.end());
    cells[s - 1] = std::move(below);
  }

  LayeredCircuit circuit;
  circuit.t = t;
  circuit.layers.resize(t);
  for (int s = 1; s <= t; ++s) {
    auto& layer = circuit.layers[s - 1];
    layer.reserve(cells[s].size());
    for (std::uint32_t cell : cells[s]) {
      CircuitGate gate;
      gate.cell = cell;
      gate.ones_threshold = rules.threshold[cell];
      std::uint32_t begin = rules.input_offsets[cell];
      std::uint32_t end = rules.input_offsets[cell + 1];
      gate.wires.reserve(end - begin);
      for (std::uint32_t i = begin; i < end; ++i) {
        if (s == 1) {
          gate.wires.push_back(-1);
        } else {
          const auto& prev = cells[s - 1];
          auto it = std::lower_bound(prev.begin(), prev.end(), rules.inputs[i]);
          gate.wires.push_back(static_cast<std::int32_t>(it - prev.begin()));
        }
      }
      layer.push_back(std::move(gate));
    }
  }
  return circuit;
}

std::string count_paths(const LayeredCircuit& circuit) {
  std::vector<BigInt> below;
  for (const auto& layer : circuit.layers) {
    std::vector<BigInt> cur(layer.size(), 0);
    for (std::size_t g = 0; g < layer.size(); ++g)
      for (std::int32_t w : layer[g].wires)
        cur[g] += w < 0 ? BigInt(1) : below[w];
    below = std::move(cur);
  }
  BigInt total = 0;
  for (const BigInt& x : below) total += x;
  return total.str();
}

double es_bound(const LayeredCircuit& circuit, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("epsilon must lie in [0,1]");
  double shrink = std::abs(1.0 - 2.0 * epsilon);
  if (shrink == 0.0) return 0.0;
  double log_gate = 2.0 * std::log(shrink);

  std::vector<double> below;
  for (const auto& layer : circuit.layers) {
    std::vector<double> cur(layer.size());
    for (std::size_t g = 0; g < layer.size(); ++g) {
      std::vector<double> terms;
      terms.reserve(layer[g].wires.size());
      for (std::int32_t w : layer[g].wires)
        terms.push_back(w < 0 ? 0.0 : below[w]);
      cur[g] = log_sum_exp(terms) + log_gate;
    }
    below = std::move(cur);
  }
  return std::exp(log_sum_exp(below));
}

double exact_mi(const LayeredCircuit& circuit, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("epsilon must lie in [0,1]");
  std::size_t gates = circuit.gate_count();
  if (gates == 0) throw std::invalid_argument("circuit has no gates");
  if (gates > static_cast<std::size_t>(kExactMiMaxGates))
    throw std::invalid_argument(
        "circuit too large for exhaustive enumeration (" +
        std::to_string(kExactMiMaxGates) + " gates max)");
  if (circuit.layers.back().size() != 1)
    throw std::invalid_argument("output layer must hold a single gate");

  // P(mask has k faulted gates) factored by popcount.
  std::vector<long double> mass(gates + 1);
  for (std::size_t k = 0; k <= gates; ++k)
    mass[k] = std::pow(static_cast<long double>(epsilon), static_cast<long double>(k)) *
              std::pow(static_cast<long double>(1.0 - epsilon),
                       static_cast<long double>(gates - k));

  long double p1[2] = {0.0L, 0.0L};
  std::vector<std::uint8_t> out_below, out_cur;
  for (int x = 0; x <= 1; ++x) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << gates); ++mask) {
      out_below.clear();
      std::size_t gate_id = 0;
      for (const auto& layer : circuit.layers) {
        out_cur.clear();
        for (const auto& gate : layer) {
          int ones = 0;
          for (std::int32_t w : gate.wires) ones += w < 0 ? x : out_below[w];
          int bit = ones >= gate.ones_threshold ? 1 : 0;
          bit ^= static_cast<int>(mask >> gate_id & 1);
          out_cur.push_back(static_cast<std::uint8_t>(bit));
          ++gate_id;
        }
        std::swap(out_below, out_cur);
      }
      if (out_below[0]) p1[x] += mass[std::popcount(mask)];
    }
  }

  long double hy = entropy_bits(0.5L * (p1[0] + p1[1]));
  long double hyx = 0.5L * entropy_bits(p1[0]) + 0.5L * entropy_bits(p1[1]);
  return std::max(0.0, static_cast<double>(hy - hyx));
}

FeasibilityVerdict tolerance_feasible(long long d, double xi, double delta) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  if (!(xi >= 0.0 && xi <= 0.5))
    throw std::invalid_argument("xi must lie in [0, 1/2]");
  double floor_bits = fano_floor(delta);

  FeasibilityVerdict verdict;
  double log_rate = std::log(static_cast<double>(d)) + 2.0 * std::log(2.0 * xi);
  if (!(log_rate < 0.0)) return verdict;  // d (2 xi)^2 >= 1: nothing excluded
  double log_floor = std::log(floor_bits);
  for (int t = 1; t <= 1000000; ++t)
    if (static_cast<double>(t) * log_rate < log_floor) {
      verdict.excluded = true;
      verdict.excluded_at_t = t;
      return verdict;
    }
  return verdict;
}

InfoBoundReport info_bound_report(long long d, double xi, double delta, int t) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  if (t < 1) throw std::invalid_argument("horizon must be at least 1");
  if (!(xi >= 0.0 && xi <= 0.5))
    throw std::invalid_argument("xi must lie in [0, 1/2]");

  InfoBoundReport report;
  report.d = d;
  report.xi = xi;
  report.delta = delta;
  report.t = t;
  report.path_count =
      BigInt(boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(t)))
          .str();
  report.es = std::exp(static_cast<double>(t) *
                       (std::log(static_cast<double>(d)) +
                        2.0 * std::log(2.0 * xi)));
  report.fano = fano_floor(delta);
  report.verdict = tolerance_feasible(d, xi, delta);
  return report;
}

}  // namespace camem
