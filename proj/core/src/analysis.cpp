#include "camem/analysis.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace camem {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Least integer n with n >= x, evaluated in extended precision; the explicit
// re-checks certify minimality (n - 1 must fail the inequality) even when x
// sits within one ulp of an integer.
long long least_int_at_least(long double x) {
  require(std::isfinite(static_cast<double>(x)), "bound expression is not finite");
  auto n = static_cast<long long>(std::ceil(static_cast<double>(x)));
  while (static_cast<long double>(n - 1) >= x) --n;
  while (static_cast<long double>(n) < x) ++n;
  return n;
}

long long least_with_parity_at_least(long double x, bool odd) {
  long long n = least_int_at_least(x);
  if ((n % 2 != 0) != odd) ++n;
  return n;
}

void check_xi(double xi, bool allow_half) {
  require(xi > 0.0 && (allow_half ? xi <= 0.5 : xi < 0.5),
          allow_half ? "margin xi must lie in (0, 1/2]"
                     : "margin xi must lie in (0, 1/2)");
}

}  // namespace

double binomial_tail(int d, int h, double p) {
  require(d >= 0, "binomial_tail: trial count must be nonnegative");
  require(p >= 0.0 && p <= 1.0, "binomial_tail: p must lie in [0, 1]");
  if (h <= 0) return 1.0;
  if (h > d) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double log_p = std::log(p);
  double log_q = std::log1p(-p);
  double lgd = std::lgamma(d + 1.0);
  // Streaming log-sum-exp over the tail terms.
  double run_max = -INFINITY, run_sum = 0.0;
  for (int k = h; k <= d; ++k) {
    double lt = lgd - std::lgamma(k + 1.0) - std::lgamma(d - k + 1.0) +
                k * log_p + (d - k) * log_q;
    if (lt <= run_max) {
      run_sum += std::exp(lt - run_max);
    } else {
      run_sum = run_sum * std::exp(run_max - lt) + 1.0;
      run_max = lt;
    }
  }
  double v = std::exp(run_max + std::log(run_sum));
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

double binary_entropy(double p) {
  require(p >= 0.0 && p <= 1.0, "entropy argument must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double fano_floor(double delta) {
  require(delta >= 0.0 && delta < 0.5, "tolerance delta must lie in [0, 1/2)");
  return 1.0 - binary_entropy(delta);
}

RecursionMode recursion_mode_from_string(const std::string& s) {
  if (s == "analytic_bound") return RecursionMode::analytic_bound;
  if (s == "exact_greedy") return RecursionMode::exact_greedy;
  if (s == "exact_pure") return RecursionMode::exact_pure;
  throw std::invalid_argument("unknown recursion mode '" + s +
                              "' (expected analytic_bound, exact_greedy, exact_pure)");
}

std::string to_string(RecursionMode mode) {
  switch (mode) {
    case RecursionMode::analytic_bound: return "analytic_bound";
    case RecursionMode::exact_greedy: return "exact_greedy";
    case RecursionMode::exact_pure: return "exact_pure";
  }
  throw std::logic_error("invalid recursion mode");
}

double recursion_step(double p, int d, int h, double epsilon, RecursionMode mode) {
  require(p >= 0.0 && p <= 1.0, "recursion_step: p must lie in [0, 1]");
  require(epsilon >= 0.0 && epsilon <= 1.0, "recursion_step: epsilon must lie in [0, 1]");
  double b = binomial_tail(d, h, p);
  switch (mode) {
    case RecursionMode::analytic_bound: return epsilon + b;
    case RecursionMode::exact_greedy: return epsilon + (1.0 - epsilon) * b;
    case RecursionMode::exact_pure: return epsilon * (1.0 - b) + (1.0 - epsilon) * b;
  }
  throw std::logic_error("invalid recursion mode");
}

double majorant_step(double p, int d, int m, double epsilon) {
  require(p >= 0.0 && p <= 1.0, "majorant_step: p must lie in [0, 1]");
  require(m >= 0 && m <= d, "majorant_step: slack m must lie in [0, d]");
  double base = 4.0 * p * (1.0 - p);
  return epsilon + std::ldexp(std::pow(base, 0.5 * (d - m)), m);
}

double induction_gap(double xi, int m, int d) {
  check_xi(xi, false);
  require(m >= 0 && m <= d, "induction_gap: slack m must lie in [0, d]");
  return 0.5 * xi - std::ldexp(std::pow(1.0 - xi * xi, 0.5 * (d - m)), m);
}

RecursionTrace iterate_recursion(const RecursionParams& params) {
  RecursionTrace tr;
  tr.d = params.d;
  tr.h = params.h;
  tr.mode = params.mode;
  require(params.d >= 1, "recursion needs at least one input per vertex");
  require(params.h >= 0 && params.h <= params.d + 1,
          "vote threshold out of range");
  require(params.t_max >= 1, "t_max must be positive");

  // epsilon and xi are redundant (epsilon = 1/2 - xi); accept either or a
  // consistent pair.
  if (params.epsilon && params.xi)
    require(std::abs(*params.epsilon - (0.5 - *params.xi)) <= 1e-12,
            "epsilon and xi disagree: epsilon must equal 1/2 - xi");
  if (params.epsilon) {
    tr.epsilon = *params.epsilon;
    tr.xi = 0.5 - tr.epsilon;
  } else if (params.xi) {
    tr.xi = *params.xi;
    tr.epsilon = 0.5 - tr.xi;
  } else {
    throw std::invalid_argument("recursion needs epsilon or xi");
  }
  require(tr.epsilon >= 0.0 && tr.epsilon <= 1.0, "epsilon must lie in [0, 1]");

  tr.delta = params.delta ? *params.delta : 0.5 - 0.5 * tr.xi;
  require(tr.delta >= 0.0 && tr.delta <= 1.0, "delta must lie in [0, 1]");

  tr.m = params.m ? *params.m : std::max(0, params.d - 2 * params.h);
  if (params.mode == RecursionMode::analytic_bound) {
    require(tr.m >= 0 && tr.m <= tr.d, "slack m must lie in [0, d]");
    require(2 * params.h >= params.d - tr.m,
            "vote threshold too small for slack m: need h >= (d - m)/2");
  }

  tr.p.reserve(64);
  tr.p.push_back(0.0);
  double p = 0.0;
  bool decided = false;
  for (int t = 1; t <= params.t_max; ++t) {
    double next = params.mode == RecursionMode::analytic_bound
                      ? majorant_step(std::min(p, 1.0), tr.d, tr.m, tr.epsilon)
                      : recursion_step(p, tr.d, tr.h, tr.epsilon, params.mode);
    tr.p.push_back(next);
    if (next > tr.delta) {
      tr.violated_at = t;
      tr.tolerant = false;
      decided = true;
      break;
    }
    if (std::abs(next - p) < kFixedPointTol) {
      tr.converged = true;
      tr.tolerant = true;
      decided = true;
      break;
    }
    p = next;
  }
  if (!decided) tr.tolerant = true;  // never exceeded delta within t_max
  tr.fixed_point = tr.p.back();
  return tr;
}

long long min_degree_directed_tree(double xi, int m) {
  check_xi(xi, false);
  require(m >= 0 && m <= 62, "slack m out of range");
  // d >= m + (2/xi^2) * ln(2^(m+1)/xi), with the log expanded for accuracy.
  long double x = xi;
  long double expr = m + 2.0L / (x * x) *
                             ((m + 1) * std::numbers::ln2_v<long double> -
                              std::log(x));
  return least_int_at_least(expr);
}

ParityBounds min_q_regular_tree(double xi) {
  check_xi(xi, false);
  long double x = xi;
  long double inv = 2.0L / (x * x);
  ParityBounds b;
  b.odd_q = least_with_parity_at_least(2.0L + inv * std::log(4.0L / x), true);
  b.even_q = least_with_parity_at_least(4.0L + inv * std::log(16.0L / x), false);
  return b;
}

ParityBounds min_q_tessellation(double xi) {
  check_xi(xi, false);
  long double x = xi;
  long double inv = 2.0L / (x * x);
  ParityBounds b;
  b.odd_q = least_with_parity_at_least(14.0L + inv * std::log(1024.0L / x), true);
  b.even_q = least_with_parity_at_least(16.0L + inv * std::log(4096.0L / x), false);
  return b;
}

long long info_lower_min_degree(double xi) {
  check_xi(xi, true);
  long double x = xi;
  return least_int_at_least(1.0L / (4.0L * x * x));
}

BoundsRow bounds_row(double xi) {
  BoundsRow row;
  row.xi = xi;
  for (int m = 0; m < 4; ++m) row.directed_tree[m] = min_degree_directed_tree(xi, m);
  row.regular_tree = min_q_regular_tree(xi);
  row.tessellation = min_q_tessellation(xi);
  row.info_lower = info_lower_min_degree(xi);
  return row;
}

std::string bounds_csv_header() {
  return "xi,directed_tree_m0,directed_tree_m1,directed_tree_m2,directed_tree_m3,"
         "regular_tree_odd,regular_tree_even,tessellation_odd,tessellation_even,"
         "info_lower";
}

std::string bounds_csv_row(const BoundsRow& row) {
  std::ostringstream os;
  os.precision(17);
  os << row.xi;
  for (int m = 0; m < 4; ++m) os << ',' << row.directed_tree[m];
  os << ',' << row.regular_tree.odd_q << ',' << row.regular_tree.even_q << ','
     << row.tessellation.odd_q << ',' << row.tessellation.even_q << ','
     << row.info_lower;
  return os.str();
}

}  // namespace camem
