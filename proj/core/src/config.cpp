#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "camem/config.hpp"
#include "camem/transition.hpp"

namespace camem {

namespace {

using nlohmann::json;

constexpr double kRateTol = 1e-12;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument(path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) fail(path + "." + it.key(), "unknown field");
  }
}

const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path + "." + key, "required field is missing");
  return obj.at(key);
}

int get_int(const json& obj, const std::string& path, const char* key, int dflt) {
  if (!obj.contains(key)) return dflt;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

double get_num(const json& obj, const std::string& path, const char* key,
               double dflt) {
  if (!obj.contains(key)) return dflt;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

std::string get_str(const json& obj, const std::string& path, const char* key,
                    const std::string& dflt) {
  if (!obj.contains(key)) return dflt;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

LatticeSpec parse_lattice_spec(const json& obj) {
  if (!obj.is_object()) fail("lattice", "expected an object");
  LatticeSpec spec;
  try {
    spec.kind = lattice_kind_from_string(
        member(obj, "lattice", "kind").get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail("lattice.kind", e.what());
  }
  switch (spec.kind) {
    case LatticeKind::tree:
      check_keys(obj, "lattice", {"kind", "q", "depth"});
      spec.q = get_int(obj, "lattice", "q", 3);
      spec.depth = get_int(obj, "lattice", "depth", 2);
      break;
    case LatticeKind::hyperbolic:
      check_keys(obj, "lattice", {"kind", "p", "q", "shells"});
      spec.p = get_int(obj, "lattice", "p", 3);
      spec.q = get_int(obj, "lattice", "q", 7);
      spec.depth = get_int(obj, "lattice", "shells", 2);
      break;
    case LatticeKind::euclidean:
      check_keys(obj, "lattice", {"kind", "tiling", "width", "height"});
      try {
        spec.tiling = tiling_from_string(
            get_str(obj, "lattice", "tiling", "square44"));
      } catch (const std::invalid_argument& e) {
        fail("lattice.tiling", e.what());
      }
      spec.width = get_int(obj, "lattice", "width", 8);
      spec.height = get_int(obj, "lattice", "height", 8);
      break;
    case LatticeKind::toom:
      check_keys(obj, "lattice", {"kind", "width", "height"});
      spec.width = get_int(obj, "lattice", "width", 8);
      spec.height = get_int(obj, "lattice", "height", 8);
      break;
  }
  return spec;
}

RuleSpec parse_rule_spec(const json& obj) {
  if (!obj.is_object()) fail("rules", "expected an object");
  check_keys(obj, "rules", {"kind", "arity", "hex"});
  RuleSpec spec;
  std::string kind = get_str(obj, "rules", "kind", "majority");
  if (kind == "majority") {
    spec.kind = RuleSpec::Kind::majority;
  } else if (kind == "treeified") {
    spec.kind = RuleSpec::Kind::treeified;
  } else if (kind == "table") {
    spec.kind = RuleSpec::Kind::table;
    spec.arity = get_int(obj, "rules", "arity", 0);
    spec.hex = get_str(obj, "rules", "hex", "");
    try {
      BooleanTable::from_hex(spec.arity, spec.hex);
    } catch (const std::invalid_argument& e) {
      fail("rules", e.what());
    }
  } else {
    fail("rules.kind", "unknown rule kind '" + kind + "'");
  }
  if (spec.kind != RuleSpec::Kind::table &&
      (obj.contains("arity") || obj.contains("hex")))
    fail("rules", "arity/hex only apply to table rules");
  return spec;
}

FaultSpec parse_fault_spec(const json& obj) {
  if (!obj.is_object()) fail("fault", "expected an object");
  check_keys(obj, "fault",
             {"model", "alpha", "beta", "epsilon", "xi", "a", "remembered_bit"});
  FaultSpec spec;
  if (obj.contains("model")) {
    try {
      spec.model = fault_model_from_string(
          member(obj, "fault", "model").get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail("fault.model", e.what());
    }
  }
  if (obj.contains("a") && obj.contains("remembered_bit"))
    fail("fault", "give the remembered bit as either 'a' or 'remembered_bit'");
  spec.remembered_bit = get_int(obj, "fault", "a",
                                get_int(obj, "fault", "remembered_bit", 0));
  if (spec.remembered_bit != 0 && spec.remembered_bit != 1)
    fail("fault.a", "remembered bit must be 0 or 1");

  bool has_ab = obj.contains("alpha") || obj.contains("beta");
  bool has_xi = obj.contains("xi");
  bool has_eps = obj.contains("epsilon");
  double xi_in = get_num(obj, "fault", "xi", 0.0);
  double eps_in = get_num(obj, "fault", "epsilon", 0.0);
  if (has_ab) {
    spec.alpha = get_num(obj, "fault", "alpha", 0.0);
    spec.beta = get_num(obj, "fault", "beta", 0.0);
  } else if (has_xi) {
    if (!(xi_in > 0.0 && xi_in <= 0.5))
      fail("fault.xi", "the margin below 1/2 must lie in (0, 1/2]");
    spec.alpha = 0.5 - xi_in;
    spec.beta = 0.0;
  } else if (has_eps) {
    spec.alpha = eps_in;
    spec.beta = 0.0;
  }
  if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0))
    fail("fault.alpha", "must lie in [0,1]");
  if (!(spec.beta >= 0.0 && spec.beta <= 1.0))
    fail("fault.beta", "must lie in [0,1]");
  // Redundant inputs are fine when they agree; that keeps the canonical
  // echo, which spells out all four rates, parseable.
  if (has_xi && has_ab && std::abs(spec.xi() - xi_in) > kRateTol)
    fail("fault.xi", "inconsistent with alpha/beta");
  if (has_eps && (has_ab || has_xi) &&
      std::abs(spec.epsilon() - eps_in) > kRateTol)
    fail("fault.epsilon", "inconsistent with the other rate fields");
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    fail("fault", e.what());
  }
  return spec;
}

PlanSpec parse_plan_spec(const json& obj) {
  if (!obj.is_object()) fail("plan", "expected an object");
  check_keys(obj, "plan", {"horizon", "replicates", "observed", "policy"});
  PlanSpec spec;
  spec.horizon = get_int(obj, "plan", "horizon", 10);
  if (spec.horizon < 0) fail("plan.horizon", "must be nonnegative");
  spec.replicates = get_int(obj, "plan", "replicates", 1000);
  if (spec.replicates < 1) fail("plan.replicates", "must be at least 1");
  try {
    spec.policy = boundary_policy_from_string(
        get_str(obj, "plan", "policy", "clamp_to_error"));
  } catch (const std::invalid_argument& e) {
    fail("plan.policy", e.what());
  }
  if (obj.contains("observed")) {
    const json& v = obj.at("observed");
    if (v.is_string()) {
      std::string word = v.get<std::string>();
      if (word == "root")
        spec.observe = PlanSpec::Observe::root;
      else if (word == "all")
        spec.observe = PlanSpec::Observe::all;
      else
        fail("plan.observed", "expected 'root', 'all', or a vertex list");
    } else if (v.is_array()) {
      spec.observe = PlanSpec::Observe::list;
      for (const json& e : v) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
          fail("plan.observed", "vertex ids must be nonnegative integers");
        spec.observed.push_back(e.get<std::uint32_t>());
      }
      if (spec.observed.empty()) fail("plan.observed", "vertex list is empty");
    } else {
      fail("plan.observed", "expected 'root', 'all', or a vertex list");
    }
  }
  return spec;
}

}  // namespace

std::string to_string(RuleSpec::Kind kind) {
  switch (kind) {
    case RuleSpec::Kind::majority: return "majority";
    case RuleSpec::Kind::treeified: return "treeified";
    case RuleSpec::Kind::table: return "table";
  }
  throw std::logic_error("invalid rule kind");
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_object()) fail("config", "top level must be a JSON object");
  check_keys(doc, "config", {"lattice", "rules", "fault", "plan", "seed", "out"});

  ExperimentConfig config;
  config.lattice = parse_lattice_spec(member(doc, "config", "lattice"));
  config.rules = doc.contains("rules") ? parse_rule_spec(doc.at("rules"))
                                       : RuleSpec{};
  config.fault = doc.contains("fault") ? parse_fault_spec(doc.at("fault"))
                                       : FaultSpec{};
  config.plan = doc.contains("plan") ? parse_plan_spec(doc.at("plan"))
                                     : PlanSpec{};
  if (doc.contains("seed")) {
    const json& v = doc.at("seed");
    if (v.is_number_unsigned())
      config.seed = v.get<std::uint64_t>();
    else if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
      config.seed = static_cast<std::uint64_t>(v.get<std::int64_t>());
    else
      fail("seed", "expected a nonnegative integer");
  }
  config.out_dir = get_str(doc, "config", "out", "");

  // The adversary is implemented as the greedy vote-forcer, which is only
  // the worst case for monotone rules; anything else is rejected up front.
  if (config.rules.kind == RuleSpec::Kind::table &&
      config.fault.model == FaultModel::adversarial) {
    BooleanTable table = BooleanTable::from_hex(config.rules.arity, config.rules.hex);
    if (!analyze_boolean(table).monotone)
      fail("rules", "adversarial faults require a monotone rule; table '" +
                        config.rules.hex + "' is not monotone");
  }
  if (config.fault.epsilon() >= 0.5)
    fail("fault", "combined rate epsilon = " +
                      std::to_string(config.fault.epsilon()) +
                      " leaves no margin below 1/2; tolerance experiments "
                      "need epsilon < 1/2");
  return config;
}

std::string canonical_config(const ExperimentConfig& config) {
  json doc;

  json lattice;
  lattice["kind"] = to_string(config.lattice.kind);
  switch (config.lattice.kind) {
    case LatticeKind::tree:
      lattice["q"] = config.lattice.q;
      lattice["depth"] = config.lattice.depth;
      break;
    case LatticeKind::hyperbolic:
      lattice["p"] = config.lattice.p;
      lattice["q"] = config.lattice.q;
      lattice["shells"] = config.lattice.depth;
      break;
    case LatticeKind::euclidean:
      lattice["tiling"] = to_string(config.lattice.tiling);
      lattice["width"] = config.lattice.width;
      lattice["height"] = config.lattice.height;
      break;
    case LatticeKind::toom:
      lattice["width"] = config.lattice.width;
      lattice["height"] = config.lattice.height;
      break;
  }
  doc["lattice"] = lattice;

  json rules;
  rules["kind"] = to_string(config.rules.kind);
  if (config.rules.kind == RuleSpec::Kind::table) {
    rules["arity"] = config.rules.arity;
    rules["hex"] = config.rules.hex;
  }
  doc["rules"] = rules;

  json fault;
  fault["model"] = to_string(config.fault.model);
  fault["a"] = config.fault.remembered_bit;
  fault["alpha"] = config.fault.alpha;
  fault["beta"] = config.fault.beta;
  fault["epsilon"] = config.fault.epsilon();
  fault["xi"] = config.fault.xi();
  doc["fault"] = fault;

  json plan;
  plan["horizon"] = config.plan.horizon;
  plan["replicates"] = config.plan.replicates;
  switch (config.plan.observe) {
    case PlanSpec::Observe::root: plan["observed"] = "root"; break;
    case PlanSpec::Observe::all: plan["observed"] = "all"; break;
    case PlanSpec::Observe::list: plan["observed"] = config.plan.observed; break;
  }
  plan["policy"] = to_string(config.plan.policy);
  doc["plan"] = plan;

  doc["seed"] = config.seed;
  if (!config.out_dir.empty()) doc["out"] = config.out_dir;
  return doc.dump(2) + "\n";
}

Lattice build_lattice(const LatticeSpec& spec) {
  switch (spec.kind) {
    case LatticeKind::tree: return build_tree(spec.q, spec.depth);
    case LatticeKind::hyperbolic:
      return build_hyperbolic(spec.p, spec.q, spec.depth);
    case LatticeKind::euclidean:
      return build_euclidean_torus(spec.tiling, spec.width, spec.height);
    case LatticeKind::toom: return build_toom(spec.width, spec.height);
  }
  throw std::logic_error("invalid lattice kind");
}

std::vector<std::uint32_t> observed_vertices(const PlanSpec& plan,
                                             const Lattice& lattice) {
  switch (plan.observe) {
    case PlanSpec::Observe::root: return {0};
    case PlanSpec::Observe::all: return all_non_boundary(lattice);
    case PlanSpec::Observe::list:
      for (std::uint32_t v : plan.observed)
        if (v >= lattice.size())
          throw std::invalid_argument(
              "plan.observed: vertex " + std::to_string(v) +
              " is out of range for a lattice of " +
              std::to_string(lattice.size()) + " cells");
      return plan.observed;
  }
  throw std::logic_error("invalid observe mode");
}

}  // namespace camem
