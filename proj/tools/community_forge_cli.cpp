// community-forge: build, verify and analyse covering equilibria of interval
// information communities.
//
// Exit codes: 0 success, 1 verification failed, 2 model infeasible,
// 64 usage or malformed config, 66 missing input, 70 internal error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "community_forge/equilibrium.hpp"
#include "community_forge/filtering.hpp"
#include "community_forge/io.hpp"
#include "community_forge/supply.hpp"

namespace fs = std::filesystem;
using namespace community_forge;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;

struct CommonOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::optional<double> tol;
};

struct Options {
  CommonOptions common;
  std::string structure;
  int community = 0;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 20;
};

RunConfig load(const CommonOptions& o) {
  RunConfig cfg = load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.grid) cfg.numerics.y_grid_n = *o.grid;
  if (o.tol) cfg.numerics.nash_tol = *o.tol;
  if (!o.out.empty()) cfg.output_dir = o.out;
  try {
    cfg.numerics.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

fs::path structure_path(const Options& o, const RunConfig& cfg) {
  return o.structure.empty() ? fs::path(cfg.output_dir) / "structure.json" : fs::path(o.structure);
}

CommunityStructure load_structure(const Options& o, const RunConfig& cfg) {
  const json doc = read_json_file(structure_path(o, cfg));
  const auto arcs = arcs_from_json(doc, cfg.params.L);
  try {
    return build_structure(cfg.params, arcs, cfg.numerics);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(structure_path(o, cfg).string() + ": " + e.what());
  }
}

/// The structure named by --structure, or a freshly constructed one.
CommunityStructure structure_for(const Options& o, const RunConfig& cfg) {
  if (!o.structure.empty()) return load_structure(o, cfg);
  return construct_covering(cfg.params, cfg.numerics, cfg.K);
}

const CommunityState& pick_community(const CommunityStructure& s, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= s.communities.size()) {
    throw ConfigError("--community must lie in [0, " + std::to_string(s.communities.size()) + ")");
  }
  return s.communities[static_cast<std::size_t>(index)];
}

json checks_to_json(const PropertyReport& r) {
  json out = json::array();
  for (const auto& c : r.checks) {
    out.push_back({{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"bound", c.bound}});
  }
  return out;
}

int cmd_construct(const Options& o) {
  const RunConfig cfg = load(o.common);
  const auto s = construct_covering(cfg.params, cfg.numerics, cfg.K);
  const fs::path out = cfg.output_dir;
  for (std::size_t k = 0; k < s.communities.size(); ++k) {
    const auto& c = s.communities[k];
    const std::string stem = "community_" + std::to_string(k) + "_";
    write_demand_csv(out / "communities" / (stem + "demand.csv"), c.demand);
    write_production_csv(out / "communities" / (stem + "production.csv"), c.production);
    write_utility_csv(out / "communities" / (stem + "utility.csv"), c.utility, cfg.params.L);
  }
  for (const auto& c : s.communities) require_balance(c.utility, cfg.numerics.balance_integrity_tol);
  write_json(out / "structure.json", structure_to_json(s));
  std::printf("constructed K=%zu arc_length=%s total_utility=%s\n", s.communities.size(),
              format_number(s.communities.front().arc.length).c_str(),
              format_number(structure_to_json(s)["total_utility"].get<double>()).c_str());
  return kExitPass;
}

int cmd_verify(const Options& o) {
  const RunConfig cfg = load(o.common);
  const auto s = load_structure(o, cfg);
  const auto report = verify_nash(s, cfg.numerics.nash_agents, cfg.numerics.nash_tol, cfg.seed);
  json doc = nash_report_to_json(report);
  doc["seed"] = cfg.seed;
  write_json(fs::path(cfg.output_dir) / "nash_report.json", doc);
  std::printf("%s max_consumption_gain=%s max_production_gain=%s worst_agent=%s\n",
              report.pass ? "PASS" : "FAIL", format_number(report.max_consumption_gain).c_str(),
              format_number(report.max_production_gain).c_str(), format_number(report.worst_agent).c_str());
  return report.pass ? kExitPass : kExitVerifyFail;
}

void apply_param(GlobalParams& p, const std::string& name, double v) {
  if (name == "c") {
    p.c = v;
  } else if (name == "E_p") {
    p.E_p = v;
  } else if (name == "E_q") {
    p.E_q = v;
  } else if (name == "f.width") {
    p.f.width = v;
  } else if (name == "g.width") {
    p.g.width = v;
  } else {
    throw ConfigError("unknown sweep parameter '" + name + "' (expected c, E_p, E_q, f.width or g.width)");
  }
  try {
    p.f = KernelSpec::make(p.f.family, p.f.amplitude, p.f.width);
    p.g = KernelSpec::make(p.g.family, p.g.amplitude, p.g.width);
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sweep value ") + format_number(v) + ": " + e.what());
  }
}

int cmd_sweep(const Options& o) {
  const RunConfig cfg = load(o.common);
  if (o.steps < 1) throw ConfigError("--steps must be at least 1");
  // Validate the parameter name before doing any work.
  GlobalParams probe = cfg.params;
  apply_param(probe, o.param, o.from);
  const int steps = o.from == o.to ? 1 : o.steps;

  const fs::path path = fs::path(cfg.output_dir) / "sweep.csv";
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "param,max_interval_length,K,total_utility,expert_delta_total,t_C\n";
  for (int i = 0; i < steps; ++i) {
    const double v = steps == 1 ? o.from : o.from + (o.to - o.from) * i / (steps - 1);
    GlobalParams p = cfg.params;
    apply_param(p, o.param, v);
    out << format_number(v) << ',' << format_number(max_interval_length(p, cfg.numerics.bisection_tol)) << ',';
    try {
      const auto s = construct_covering(p, cfg.numerics, cfg.K);
      const auto K = s.communities.size();
      // Communities are rotations of one another; one stands for all.
      const auto& c = s.communities.front();
      const auto plan = expert_routing_plan(c, p);
      out << K << ',' << format_number(static_cast<double>(K) * c.utility.total_formula) << ','
          << format_number(static_cast<double>(K) * plan.delta_total) << ','
          << (plan.t_C ? format_number(*plan.t_C) : std::string()) << '\n';
    } catch (const ConstructionError&) {
      out << "0,,,\n";
    }
  }
  std::printf("sweep %s: %d rows -> %s\n", o.param.c_str(), steps, path.string().c_str());
  return kExitPass;
}

int cmd_filter_analysis(const Options& o) {
  const RunConfig cfg = load(o.common);
  const auto s = structure_for(o, cfg);
  const auto& c = pick_community(s, o.community);
  const auto& p = cfg.params;

  json agents = json::array();
  for (const auto& h : cfg.filter.h) {
    const auto r = optimal_filter_agent(c, h, p, cfg.filter.y_grid_n);
    agents.push_back({{"h", kernel_to_json(h)},
                      {"agent", r.agent},
                      {"offset_from_mid", r.agent_offset},
                      {"grid_step", r.totals.step},
                      {"total", r.total}});
  }
  const auto threshold = make_threshold_filter(c, p);
  const double thr_total = filtered_total_utility(c, threshold, p);
  const double all_total = filtered_total_utility(c, FilterSpec::pass_all(), p);
  const double gap = std::fabs(thr_total - all_total) / std::max(std::fabs(all_total), 1e-300);
  const auto plan = expert_routing_plan(c, p);

  const fs::path out = cfg.output_dir;
  write_expert_csv(out / "expert_gains.csv", plan);
  write_json(out / "filter_analysis.json",
             json{{"community", o.community},
                  {"mid", c.production.mid()},
                  {"optimal_filter_agents", agents},
                  {"t0", threshold.threshold},
                  {"threshold_total", thr_total},
                  {"all_pass_total", all_total},
                  {"threshold_relative_gap", gap},
                  {"expert_plan", expert_plan_to_json(plan)}});
  std::printf("filter-analysis community=%d t0=%s threshold_gap=%s expert_delta=%s\n", o.community,
              format_number(threshold.threshold).c_str(), format_number(gap).c_str(),
              format_number(plan.delta_total).c_str());
  return kExitPass;
}

int cmd_profile(const Options& o) {
  const RunConfig cfg = load(o.common);
  const auto s = structure_for(o, cfg);
  const auto& c = pick_community(s, o.community);
  const auto rep = supply_density(c.production, cfg.numerics.x_grid_n, cfg.numerics.singular_jacobian);
  const fs::path out = cfg.output_dir;
  write_demand_csv(out / "demand.csv", c.demand);
  write_production_csv(out / "production.csv", c.production);
  write_supply_csv(out / "supply.csv", rep, cfg.params.L);
  write_utility_csv(out / "utility.csv", c.utility, cfg.params.L);
  write_json(out / "profile.json",
             json{{"community", o.community},
                  {"arc", {{"start", c.arc.start}, {"length", c.arc.length}}},
                  {"totals",
                   {{"consumer", c.utility.total_consumer},
                    {"producer", c.utility.total_producer},
                    {"formula", c.utility.total_formula},
                    {"relative_spread", balance_residual(c.utility)}}},
                  {"checks",
                   {{"demand", checks_to_json(demand_properties_check(c.demand, cfg.numerics.concavity_tol))},
                    {"production", checks_to_json(production_map_check(c.production))},
                    {"supply", checks_to_json(supply_properties_check(rep))},
                    {"utility", checks_to_json(utility_peak_check(c.utility))}}}});
  std::printf("profile community=%d -> %s\n", o.community, out.string().c_str());
  return kExitPass;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "run configuration (JSON)")->required();
  cmd->add_option("--out", o.out, "output directory (overrides output_dir)");
  cmd->add_option("--seed", o.seed, "seed for agent sampling");
  cmd->add_option("--grid", o.grid, "producers per community (y grid)");
  cmd->add_option("--tol", o.tol, "Nash deviation tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering equilibria of interval information communities"};
  app.require_subcommand(1);
  Options o;

  auto* construct = app.add_subcommand("construct", "build the covering equilibrium structure");
  add_common(construct, o.common);

  auto* verify = app.add_subcommand("verify", "check Nash conditions of a structure");
  add_common(verify, o.common);
  verify->add_option("--structure", o.structure, "structure.json (default: <out>/structure.json)");

  auto* sweep = app.add_subcommand("sweep", "sweep one parameter");
  add_common(sweep, o.common);
  sweep->add_option("--param", o.param, "c, E_p, E_q, f.width or g.width")->required();
  sweep->add_option("--from", o.from, "first value")->required();
  sweep->add_option("--to", o.to, "last value")->required();
  sweep->add_option("--steps", o.steps, "number of rows")->capture_default_str();

  auto* filter = app.add_subcommand("filter-analysis", "filter agent, threshold filter and expert routing");
  add_common(filter, o.common);
  filter->add_option("--structure", o.structure, "structure.json (default: construct)");
  filter->add_option("--community", o.community, "community index")->capture_default_str();

  auto* profile = app.add_subcommand("profile", "dump demand, supply and utility grids");
  add_common(profile, o.common);
  profile->add_option("--structure", o.structure, "structure.json (default: construct)");
  profile->add_option("--community", o.community, "community index")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(o);
    if (verify->parsed()) return cmd_verify(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (filter->parsed()) return cmd_filter_analysis(o);
    if (profile->parsed()) return cmd_profile(o);
  } catch (const MissingInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoInput;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConstructionError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
