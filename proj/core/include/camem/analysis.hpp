#pragma once

#include <optional>
#include <string>
#include <vector>

namespace camem {

// P(Bin(d, p) >= h), computed in log space so large d stays stable.
double binomial_tail(int d, int h, double p);

// Entropy of a Bernoulli(p) bit, in bits.
double binary_entropy(double p);

// Smallest achievable residual uncertainty 1 - h2(delta) when the recovery
// error must stay at most delta < 1/2.
double fano_floor(double delta);

enum class RecursionMode {
  analytic_bound,  // one-sided majorant of the error recursion
  exact_greedy,    // worst-case faults against a monotone vote
  exact_pure,      // faults flip the computed bit unconditionally
};

RecursionMode recursion_mode_from_string(const std::string& s);
std::string to_string(RecursionMode mode);

// One step of the per-level error recursion at fault rate epsilon for a
// vertex that takes d inputs and votes with threshold h.  B abbreviates
// binomial_tail(d, h, p):
//   analytic_bound: epsilon + B
//   exact_greedy:   epsilon + (1 - epsilon) * B
//   exact_pure:     epsilon * (1 - B) + (1 - epsilon) * B
double recursion_step(double p, int d, int h, double epsilon, RecursionMode mode);

// Majorant map used by iterate_recursion in analytic_bound mode:
//   p -> epsilon + 2^m * (4 p (1-p))^((d - m) / 2)
// valid whenever the vote threshold satisfies h >= (d - m) / 2.
double majorant_step(double p, int d, int m, double epsilon);

// Margin of the tolerance induction at ceiling delta = 1/2 - xi/2:
// xi/2 - 2^m (1 - xi^2)^((d-m)/2).  Nonnegative gap means the majorant maps
// [0, delta] into itself.
double induction_gap(double xi, int m, int d);

struct RecursionParams {
  int d = 0;
  int h = 0;
  std::optional<int> m;           // default max(0, d - 2h)
  std::optional<double> epsilon;  // fault rate; epsilon = 1/2 - xi
  std::optional<double> xi;       // margin below 1/2
  std::optional<double> delta;    // tolerance ceiling, default 1/2 - xi/2
  RecursionMode mode = RecursionMode::analytic_bound;
  int t_max = 1000000;
};

struct RecursionTrace {
  int d = 0;
  int h = 0;
  int m = 0;
  double epsilon = 0.0;
  double xi = 0.0;
  double delta = 0.0;
  RecursionMode mode = RecursionMode::analytic_bound;
  std::vector<double> p;   // p[0] = 0, then one entry per step taken
  bool tolerant = false;   // stayed <= delta through the fixed point
  int violated_at = -1;    // first t with p[t] > delta, -1 if never
  bool converged = false;  // successive iterates within kFixedPointTol
  double fixed_point = 0.0;
};

inline constexpr double kFixedPointTol = 1e-12;

// Iterates the recursion from p = 0 until it settles, exceeds delta, or
// t_max steps elapse.  analytic_bound mode iterates majorant_step; the exact
// modes iterate recursion_step.  Iteration stops at the first step past
// delta: the exact maps are monotone so a crossing never reverses, and the
// majorant is vacuous once above 1/2.
RecursionTrace iterate_recursion(const RecursionParams& params);

// Minimum degree of a directed tree whose majority votes tolerate rate
// 1/2 - xi with slack parameter m: least d >= m + (2/xi^2) ln(2^(m+1)/xi).
long long min_degree_directed_tree(double xi, int m);

struct ParityBounds {
  long long odd_q = 0;
  long long even_q = 0;
};

// Minimum branching q of an undirected regular tree, by parity of q.
ParityBounds min_q_regular_tree(double xi);

// Minimum q of a {4,q} hyperbolic tessellation, by parity of q.
ParityBounds min_q_tessellation(double xi);

// Information-theoretic floor: no scheme survives rate 1/2 - xi with fewer
// than ceil(1 / (4 xi^2)) inputs per vertex.
long long info_lower_min_degree(double xi);

struct BoundsRow {
  double xi = 0.0;
  long long directed_tree[4] = {0, 0, 0, 0};  // m = 0..3
  ParityBounds regular_tree;
  ParityBounds tessellation;
  long long info_lower = 0;
};

BoundsRow bounds_row(double xi);
std::string bounds_csv_header();
std::string bounds_csv_row(const BoundsRow& row);

}  // namespace camem
