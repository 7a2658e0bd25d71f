// Command-line front end: lattice generation, treeification, Monte Carlo
// simulation, recursion traces, degree-bound tables, information bounds, and
// tolerance sweeps.  Subcommands that describe an experiment read the same
// JSON config; the rest take flags.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "camem/analysis.hpp"
#include "camem/config.hpp"
#include "camem/engine.hpp"
#include "camem/infobound.hpp"
#include "camem/lattice.hpp"
#include "camem/serialize.hpp"
#include "camem/transition.hpp"
#include "camem/treeify.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("short write to " + path.string());
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// --out beats the config's "out"; both default to the working directory.
std::filesystem::path resolve_out(const std::string& cli_out, bool cli_set,
                                  const std::string& config_out) {
  std::filesystem::path dir =
      cli_set ? cli_out : (config_out.empty() ? cli_out : config_out);
  std::filesystem::create_directories(dir);
  return dir;
}

camem::CompiledRules compile_rules(const camem::ExperimentConfig& config,
                                   const camem::Lattice& lattice) {
  switch (config.rules.kind) {
    case camem::RuleSpec::Kind::majority:
      return camem::compile_majority(lattice);
    case camem::RuleSpec::Kind::treeified: {
      camem::TreeRuleSet rules = camem::treeify(lattice, 0);
      return camem::compile_treeified(rules, config.fault.remembered_bit);
    }
    case camem::RuleSpec::Kind::table: {
      camem::BooleanTable table =
          camem::BooleanTable::from_hex(config.rules.arity, config.rules.hex);
      return camem::compile_table(lattice, table);
    }
  }
  throw std::logic_error("unhandled rule kind");
}

int cmd_generate(const std::string& config_path, const std::string& cli_out,
                 bool out_set) {
  camem::ExperimentConfig config = camem::parse_config(read_file(config_path));
  auto dir = resolve_out(cli_out, out_set, config.out_dir);
  camem::Lattice lattice = camem::build_lattice(config.lattice);
  std::string text = camem::serialize_lattice(lattice);
  write_file(dir / "lattice.txt", text);
  std::cout << "lattice " << camem::to_string(lattice.kind) << ": "
            << lattice.size() << " vertices, "
            << std::count(lattice.boundary.begin(), lattice.boundary.end(), 1)
            << " boundary\n"
            << "hash " << camem::content_hash(text) << "\n"
            << "wrote " << (dir / "lattice.txt").string() << "\n";
  return 0;
}

int cmd_treeify(const std::string& config_path, const std::string& cli_out,
                bool out_set) {
  camem::ExperimentConfig config = camem::parse_config(read_file(config_path));
  auto dir = resolve_out(cli_out, out_set, config.out_dir);
  camem::Lattice lattice = camem::build_lattice(config.lattice);
  camem::TreeRuleSet rules = camem::treeify(lattice, 0);
  camem::TreeCheck check = camem::verify_directed_tree(rules);
  if (!check.ok) {
    for (const std::string& d : check.diagnostics) std::cerr << d << "\n";
    throw std::runtime_error("treeified edges do not form a rooted tree");
  }
  write_file(dir / "tree.txt", camem::serialize_lattice(rules.tree));
  write_file(dir / "deletions.csv", camem::deletion_report_csv(rules));
  std::cout << "treeified " << lattice.size() << " vertices, max deletions r="
            << rules.max_deletions << " over non-boundary cells\n"
            << "wrote " << (dir / "tree.txt").string() << " and "
            << (dir / "deletions.csv").string() << "\n";
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& cli_out,
                 bool out_set, int threads) {
  camem::ExperimentConfig config = camem::parse_config(read_file(config_path));
  auto dir = resolve_out(cli_out, out_set, config.out_dir);
  camem::Lattice lattice = camem::build_lattice(config.lattice);

  camem::SimPlan plan;
  plan.lattice = &lattice;
  plan.rules = compile_rules(config, lattice);
  plan.fault = config.fault;
  plan.horizon = config.plan.horizon;
  plan.replicates = config.plan.replicates;
  plan.observed = camem::observed_vertices(config.plan, lattice);
  plan.seed = config.seed;
  plan.policy = config.plan.policy;
  plan.threads = threads;

  camem::ErrorEstimate estimate = camem::estimate_error(plan);

  std::string lattice_text = camem::serialize_lattice(lattice);
  write_file(dir / "lattice.txt", lattice_text);
  write_file(dir / "results.csv", camem::error_estimate_csv(estimate));
  json sidecar;
  sidecar["seed"] = config.seed;
  sidecar["spec"] = json::parse(camem::canonical_config(config));
  sidecar["lattice_kind"] = camem::to_string(lattice.kind);
  sidecar["lattice_hash"] = camem::content_hash(lattice_text);
  write_file(dir / "results.json", sidecar.dump(2) + "\n");

  std::cout << "simulated " << plan.replicates << " replicates to t="
            << plan.horizon << " on " << lattice.size() << " cells ("
            << plan.observed.size() << " observed)\n"
            << "mean error at t=" << plan.horizon << ": "
            << fmt(estimate.mean_freq_at(plan.horizon)) << "\n"
            << "wrote " << (dir / "results.csv").string() << ", "
            << (dir / "results.json").string() << ", "
            << (dir / "lattice.txt").string() << "\n";
  return 0;
}

int cmd_recurse(const camem::RecursionParams& params,
                const std::string& cli_out) {
  camem::RecursionTrace trace = camem::iterate_recursion(params);
  std::filesystem::path dir = cli_out;
  std::filesystem::create_directories(dir);

  std::ostringstream csv;
  csv << "t,p\n";
  for (std::size_t t = 0; t < trace.p.size(); ++t)
    csv << t << "," << fmt(trace.p[t]) << "\n";
  write_file(dir / "recursion.csv", csv.str());

  json summary;
  summary["d"] = trace.d;
  summary["h"] = trace.h;
  summary["m"] = trace.m;
  summary["epsilon"] = trace.epsilon;
  summary["xi"] = trace.xi;
  summary["delta"] = trace.delta;
  summary["mode"] = camem::to_string(trace.mode);
  summary["tolerant"] = trace.tolerant;
  summary["violated_at"] = trace.violated_at;
  summary["converged"] = trace.converged;
  summary["fixed_point"] = trace.fixed_point;
  summary["steps"] = trace.p.size() - 1;
  write_file(dir / "recursion.json", summary.dump(2) + "\n");

  if (trace.tolerant)
    std::cout << "tolerant: error stays below delta=" << fmt(trace.delta)
              << ", fixed point " << fmt(trace.fixed_point) << " after "
              << trace.p.size() - 1 << " steps\n";
  else
    std::cout << "violated at t=" << trace.violated_at << ": p="
              << fmt(trace.p.back()) << " > delta=" << fmt(trace.delta)
              << "\n";
  std::cout << "wrote " << (dir / "recursion.csv").string() << " and "
            << (dir / "recursion.json").string() << "\n";
  return 0;
}

int cmd_bounds(const std::vector<double>& xis, const std::string& cli_out) {
  std::ostringstream csv;
  csv << camem::bounds_csv_header() << "\n";
  for (double xi : xis) csv << camem::bounds_csv_row(camem::bounds_row(xi)) << "\n";
  std::filesystem::path dir = cli_out;
  std::filesystem::create_directories(dir);
  write_file(dir / "bounds.csv", csv.str());
  std::cout << csv.str() << "wrote " << (dir / "bounds.csv").string() << "\n";
  return 0;
}

int cmd_info_bound(long long d, double xi, double delta, int t,
                   const std::string& cli_out) {
  camem::InfoBoundReport report = camem::info_bound_report(d, xi, delta, t);
  json out;
  out["d"] = report.d;
  out["xi"] = report.xi;
  out["delta"] = report.delta;
  out["t"] = report.t;
  out["path_count"] = report.path_count;
  out["es_bound"] = report.es;
  out["fano_floor"] = report.fano;
  out["verdict"]["excluded"] = report.verdict.excluded;
  out["verdict"]["excluded_at_t"] = report.verdict.excluded_at_t;
  std::filesystem::path dir = cli_out;
  std::filesystem::create_directories(dir);
  write_file(dir / "info_bound.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n"
            << "wrote " << (dir / "info_bound.json").string() << "\n";
  return 0;
}

struct SweepJob {
  double xi = 0.0;
  int q = 0;
};

struct SweepRow {
  double xi = 0.0;
  int q = 0, d = 0, h = 0, m = 0;
  bool guaranteed = false;
  camem::RecursionTrace trace;
};

// Cross product of margins and branching factors; each row pairs the closed-
// form sufficiency check with the iterated majorant verdict at d = q,
// h = (q+2)/2.
int cmd_sweep(const std::string& config_path, const std::string& cli_out,
              bool out_set, int threads) {
  json config = json::parse(read_file(config_path));
  if (!config.is_object()) throw std::runtime_error("sweep config must be a JSON object");
  for (const auto& item : config.items()) {
    const std::string& key = item.key();
    if (key != "xi" && key != "q" && key != "m" && key != "delta" &&
        key != "out")
      throw std::runtime_error("sweep config: unknown key '" + key + "'");
  }
  if (!config.contains("xi") || !config.contains("q"))
    throw std::runtime_error("sweep config needs 'xi' and 'q' arrays");
  std::vector<double> xis = config["xi"].get<std::vector<double>>();
  std::vector<int> qs = config["q"].get<std::vector<int>>();
  int m = config.value("m", 1);
  if (xis.empty() || qs.empty())
    throw std::runtime_error("sweep config: 'xi' and 'q' must be non-empty");
  for (double xi : xis)
    if (!(xi > 0.0) || xi > 0.5)
      throw std::runtime_error("sweep config: xi must lie in (0, 1/2]");
  for (int q : qs)
    if (q < 3) throw std::runtime_error("sweep config: q must be at least 3");
  if (m < 0) throw std::runtime_error("sweep config: m must be nonnegative");

  auto dir = resolve_out(cli_out, out_set, config.value("out", std::string()));

  std::vector<SweepJob> jobs;
  for (double xi : xis)
    for (int q : qs) jobs.push_back({xi, q});
  std::vector<SweepRow> rows(jobs.size());

  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, jobs.size());
  auto run_job = [&](std::size_t i) {
    const SweepJob& job = jobs[i];
    SweepRow& row = rows[i];
    row.xi = job.xi;
    row.q = job.q;
    row.d = job.q;
    row.h = (job.q + 2) / 2;
    row.m = m;
    camem::ParityBounds need = camem::min_q_regular_tree(job.xi);
    row.guaranteed = job.q >= (job.q % 2 ? need.odd_q : need.even_q);
    camem::RecursionParams params;
    params.d = row.d;
    params.h = row.h;
    params.m = m;
    params.xi = job.xi;
    if (config.contains("delta")) params.delta = config["delta"].get<double>();
    row.trace = camem::iterate_recursion(params);
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < jobs.size(); i += workers) run_job(i);
      });
    for (std::thread& th : pool) th.join();
  }

  std::ostringstream csv;
  csv << "xi,q,d,h,m,guaranteed,recursion_verdict,violated_at,fixed_point\n";
  for (const SweepRow& row : rows)
    csv << fmt(row.xi) << "," << row.q << "," << row.d << "," << row.h << ","
        << row.m << "," << (row.guaranteed ? 1 : 0) << ","
        << (row.trace.tolerant ? "tolerant" : "violated") << ","
        << row.trace.violated_at << "," << fmt(row.trace.fixed_point) << "\n";
  write_file(dir / "sweep.csv", csv.str());
  std::cout << csv.str() << "wrote " << (dir / "sweep.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fault-tolerant cellular-automata memory toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "camem 0.1.0");

  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;

  auto add_config_arg = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_out = [&](CLI::App* sub) {
    return sub->add_option("--out", out_dir, "output directory")
        ->capture_default_str();
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker threads (0 = all cores)")
        ->capture_default_str();
  };

  CLI::App* generate = app.add_subcommand("generate", "build a lattice and write lattice.txt");
  add_config_arg(generate);
  CLI::Option* generate_out = add_out(generate);

  CLI::App* treeify = app.add_subcommand("treeify", "reduce a lattice to directed-tree rules");
  add_config_arg(treeify);
  CLI::Option* treeify_out = add_out(treeify);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo error estimate");
  add_config_arg(simulate);
  CLI::Option* simulate_out = add_out(simulate);
  add_threads(simulate);

  CLI::App* sweep = app.add_subcommand("sweep", "tolerance table over (xi, q) pairs");
  add_config_arg(sweep);
  CLI::Option* sweep_out = add_out(sweep);
  add_threads(sweep);

  CLI::App* recurse = app.add_subcommand("recurse", "iterate the error recursion");
  recurse->set_help_flag("--help", "print this help message");  // frees -h for --h
  int rec_d = 0, rec_h = 0, rec_m = -1, rec_tmax = 1000000;
  double rec_eps = -1.0, rec_xi = -1.0, rec_delta = -1.0;
  std::string rec_mode = "analytic_bound";
  recurse->add_option("--d", rec_d, "inputs per vertex")->required();
  recurse->add_option("--h", rec_h, "ones threshold")->required();
  recurse->add_option("--m", rec_m, "majorant slack (default max(0, d-2h))");
  recurse->add_option("--epsilon", rec_eps, "fault rate");
  recurse->add_option("--xi", rec_xi, "margin 1/2 - epsilon");
  recurse->add_option("--delta", rec_delta, "tolerance ceiling (default 1/2 - xi/2)");
  recurse->add_option("--mode", rec_mode, "analytic_bound | exact_greedy | exact_pure")
      ->capture_default_str();
  recurse->add_option("--t-max", rec_tmax, "iteration cap")->capture_default_str();
  add_out(recurse);

  CLI::App* bounds = app.add_subcommand("bounds", "degree bounds by margin");
  std::vector<double> bound_xis;
  bounds->add_option("--xi", bound_xis, "margins (comma separated)")
      ->required()
      ->delimiter(',');
  add_out(bounds);

  CLI::App* info = app.add_subcommand("info-bound", "information-theoretic exclusion");
  long long info_d = 0;
  double info_xi = 0.0, info_delta = 0.0;
  int info_t = 1;
  info->add_option("--d", info_d, "inputs per vertex")->required();
  info->add_option("--xi", info_xi, "margin 1/2 - epsilon")->required();
  info->add_option("--delta", info_delta, "recovery error ceiling")->required();
  info->add_option("--t", info_t, "unroll horizon")->required();
  add_out(info);

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed())
      return cmd_generate(config_path, out_dir, generate_out->count() > 0);
    if (treeify->parsed())
      return cmd_treeify(config_path, out_dir, treeify_out->count() > 0);
    if (simulate->parsed())
      return cmd_simulate(config_path, out_dir, simulate_out->count() > 0, threads);
    if (sweep->parsed())
      return cmd_sweep(config_path, out_dir, sweep_out->count() > 0, threads);
    if (recurse->parsed()) {
      camem::RecursionParams params;
      params.d = rec_d;
      params.h = rec_h;
      if (rec_m >= 0) params.m = rec_m;
      if (rec_eps >= 0.0) params.epsilon = rec_eps;
      if (rec_xi >= 0.0) params.xi = rec_xi;
      if (rec_delta >= 0.0) params.delta = rec_delta;
      params.mode = camem::recursion_mode_from_string(rec_mode);
      params.t_max = rec_tmax;
      return cmd_recurse(params, out_dir);
    }
    if (bounds->parsed()) return cmd_bounds(bound_xis, out_dir);
    if (info->parsed())
      return cmd_info_bound(info_d, info_xi, info_delta, info_t, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "camem: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
