#include "community_forge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace community_forge {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string(where) + ": missing required field '" + key + "'");
  }
  return j.at(key);
}

double require_number(const json& j, const char* key, const char* where) {
  const auto& v = require_field(j, key, where);
  if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

template <class T>
void optional_field(const json& j, const char* key, T& out, const char* where) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if constexpr (std::is_same_v<T, double>) {
    if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + " must be a number");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(std::string(where) + "." + key + " must be an integer");
  } else {
    if (!v.is_string()) throw ConfigError(std::string(where) + "." + key + " must be a string");
  }
  out = v.get<T>();
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

KernelSpec kernel_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("kernel must be an object");
  const auto& fam = require_field(j, "family", "kernel");
  if (!fam.is_string()) throw ConfigError("kernel.family must be a string");
  try {
    return KernelSpec::make(parse_kernel_family(fam.get<std::string>()), require_number(j, "amplitude", "kernel"),
                            require_number(j, "width", "kernel"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("kernel: ") + e.what());
  }
}

json kernel_to_json(const KernelSpec& k) {
  return json{{"family", std::string(to_string(k.family))}, {"amplitude", k.amplitude}, {"width", k.width}};
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  const auto& p = require_field(j, "params", "config");
  cfg.params.L = require_number(p, "L", "params");
  cfg.params.c = require_number(p, "c", "params");
  cfg.params.E_p = require_number(p, "E_p", "params");
  cfg.params.E_q = require_number(p, "E_q", "params");
  cfg.params.f = kernel_from_json(require_field(p, "f", "params"));
  cfg.params.g = kernel_from_json(require_field(p, "g", "params"));

  if (j.contains("numerics")) {
    const auto& n = j.at("numerics");
    if (!n.is_object()) throw ConfigError("numerics must be an object");
    auto& num = cfg.numerics;
    optional_field(n, "ring_grid_n", num.ring_grid_n, "numerics");
    optional_field(n, "y_grid_n", num.y_grid_n, "numerics");
    optional_field(n, "x_grid_n", num.x_grid_n, "numerics");
    optional_field(n, "quadrature_order", num.quadrature_order, "numerics");
    optional_field(n, "nash_agents", num.nash_agents, "numerics");
    if (n.contains("tolerances")) {
      const auto& t = n.at("tolerances");
      if (!t.is_object()) throw ConfigError("numerics.tolerances must be an object");
      optional_field(t, "golden_rel", num.golden_rel_tol, "tolerances");
      optional_field(t, "bisection", num.bisection_tol, "tolerances");
      optional_field(t, "nash", num.nash_tol, "tolerances");
      optional_field(t, "balance", num.balance_tol, "tolerances");
      optional_field(t, "balance_integrity", num.balance_integrity_tol, "tolerances");
      optional_field(t, "singular_jacobian", num.singular_jacobian, "tolerances");
      optional_field(t, "concavity", num.concavity_tol, "tolerances");
    }
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("K")) {
    if (!j.at("K").is_number_integer() || j.at("K").get<long long>() < 1) throw ConfigError("K must be a positive integer");
    cfg.K = j.at("K").get<int>();
  }
  if (j.contains("filter")) {
    const auto& fj = j.at("filter");
    if (!fj.is_object()) throw ConfigError("filter must be an object");
    if (fj.contains("h")) {
      if (!fj.at("h").is_array()) throw ConfigError("filter.h must be an array of kernels");
      for (const auto& k : fj.at("h")) cfg.filter.h.push_back(kernel_from_json(k));
    }
    optional_field(fj, "y_grid_n", cfg.filter.y_grid_n, "filter");
  }
  if (cfg.filter.h.empty()) {
    for (double w : {0.02, 0.2, 1.0}) cfg.filter.h.push_back(KernelSpec::make(KernelFamily::gaussian, 1.0, w));
  }
  optional_field(j, "output_dir", cfg.output_dir, "config");

  try {
    cfg.params.validate();
    cfg.numerics.validate();
    for (const auto& h : cfg.filter.h) require_admissible(h, KernelRole::filter_h, KernelCheck::enforce);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.filter.y_grid_n < 3) throw ConfigError("filter.y_grid_n must be at least 3");
  return cfg;
}

json config_to_json(const RunConfig& c) {
  const auto& n = c.numerics;
  json filter_h = json::array();
  for (const auto& h : c.filter.h) filter_h.push_back(kernel_to_json(h));
  json out{
      {"params",
       {{"L", c.params.L},
        {"c", c.params.c},
        {"E_p", c.params.E_p},
        {"E_q", c.params.E_q},
        {"f", kernel_to_json(c.params.f)},
        {"g", kernel_to_json(c.params.g)}}},
      {"numerics",
       {{"ring_grid_n", n.ring_grid_n},
        {"y_grid_n", n.y_grid_n},
        {"x_grid_n", n.x_grid_n},
        {"quadrature_order", n.quadrature_order},
        {"nash_agents", n.nash_agents},
        {"tolerances",
         {{"golden_rel", n.golden_rel_tol},
          {"bisection", n.bisection_tol},
          {"nash", n.nash_tol},
          {"balance", n.balance_tol},
          {"balance_integrity", n.balance_integrity_tol},
          {"singular_jacobian", n.singular_jacobian},
          {"concavity", n.concavity_tol}}}}},
      {"seed", c.seed},
      {"filter", {{"h", filter_h}, {"y_grid_n", c.filter.y_grid_n}}},
      {"output_dir", c.output_dir}};
  if (c.K) out["K"] = *c.K;
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInputError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) { return parse_config(read_json_file(path)); }

json structure_to_json(const CommunityStructure& s) {
  json communities = json::array();
  double total = 0.0;
  for (std::size_t k = 0; k < s.communities.size(); ++k) {
    const auto& c = s.communities[k];
    const auto image = c.production.image();
    total += c.utility.total_formula;
    communities.push_back({{"index", k},
                           {"start", c.arc.start},
                           {"length", c.arc.length},
                           {"mid", arc_mid(c.arc, s.params.L)},
                           {"alpha", c.alpha},
                           {"supply_support", {{"start", image.start}, {"length", image.length}}},
                           {"production_feasible", c.production.production_feasible()},
                           {"total_consumer", c.utility.total_consumer},
                           {"total_producer", c.utility.total_producer},
                           {"total_formula", c.utility.total_formula}});
  }
  const double length = s.communities.empty() ? 0.0 : s.communities.front().arc.length;
  return json{{"params",
               {{"L", s.params.L},
                {"c", s.params.c},
                {"E_p", s.params.E_p},
                {"E_q", s.params.E_q},
                {"f", kernel_to_json(s.params.f)},
                {"g", kernel_to_json(s.params.g)}}},
              {"K", s.communities.size()},
              {"arc_length", length},
              {"max_interval_length", max_interval_length(s.params, s.numerics.bisection_tol)},
              {"feasibility_limit", feasibility_limit(s.params)},
              {"total_utility", total},
              {"communities", communities}};
}

std::vector<Arc> arcs_from_json(const json& j, double L) {
  const auto& cs = require_field(j, "communities", "structure");
  if (!cs.is_array() || cs.empty()) throw ConfigError("structure.communities must be a non-empty array");
  std::vector<Arc> arcs;
  for (const auto& c : cs) {
    try {
      arcs.push_back(Arc::make(require_number(c, "start", "community"), require_number(c, "length", "community"), L));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("community: ") + e.what());
    }
  }
  return arcs;
}

json nash_report_to_json(const NashReport& r) {
  return json{{"max_consumption_gain", r.max_consumption_gain},
              {"max_production_gain", r.max_production_gain},
              {"worst_agent", r.worst_agent},
              {"worst_ratio", r.worst_ratio},
              {"n_agents", r.agents.size()},
              {"tol", r.tol},
              {"pass", r.pass}};
}

json expert_plan_to_json(const ExpertPlan& plan) {
  return json{{"t_C", plan.t_C ? json(*plan.t_C) : json(nullptr)},
              {"delta_total", plan.delta_total},
              {"benefiting_fraction", plan.benefiting_fraction},
              {"benefiting_count", plan.benefiting.size()},
              {"threshold_violations", plan.threshold_violations}};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_demand_csv(const std::filesystem::path& path, const DemandProfile& profile) {
  auto out = open_out(path);
  out << "x,P\n";
  const auto& v = profile.values;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << format_number(v.coord(i)) << ',' << format_number(v.values[i]) << '\n';
  }
}

void write_production_csv(const std::filesystem::path& path, const ProductionMap& map) {
  auto out = open_out(path);
  out << "y,x_star,objective,gate_rate\n";
  for (const auto& t : map.targets) {
    out << format_number(t.y) << ',' << format_number(t.x_star) << ',' << format_number(t.objective) << ','
        << format_number(t.gate_rate) << '\n';
  }
}

void write_supply_csv(const std::filesystem::path& path, const SupplyRepresentation& rep, double L) {
  auto out = open_out(path);
  out << "x,Q_star,flagged\n";
  if (!rep.density) return;
  const auto& d = *rep.density;
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << format_number(canonicalize(d.coord(i), L)) << ',' << format_number(d.values[i]) << ','
        << (rep.flagged[i] ? "true" : "false") << '\n';
  }
}

void write_utility_csv(const std::filesystem::path& path, const UtilityProfile& u, double L) {
  auto out = open_out(path);
  out << "y,U_d,U_s\n";
  for (std::size_t i = 0; i < u.consumer.size(); ++i) {
    out << format_number(canonicalize(u.consumer.coord(i), L)) << ',' << format_number(u.consumer.values[i]) << ','
        << format_number(u.producer.values[i]) << '\n';
  }
}

void write_expert_csv(const std::filesystem::path& path, const ExpertPlan& plan) {
  auto out = open_out(path);
  out << "y,gain,P_at_xstar,q_at_xstar\n";
  for (const auto& g : plan.gains) {
    out << format_number(g.y) << ',' << format_number(g.gain) << ',' << format_number(g.P) << ','
        << format_number(g.q) << '\n';
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace community_forge
