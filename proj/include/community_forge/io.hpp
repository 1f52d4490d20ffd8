#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "community_forge/equilibrium.hpp"
#include "community_forge/filtering.hpp"
#include "community_forge/supply.hpp"

namespace community_forge {

/// A configuration that parses but does not describe a valid run.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input file that does not exist or cannot be read.
class MissingInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FilterConfig {
  std::vector<KernelSpec> h;  // kernels scanned for the best filter agent
  int y_grid_n = 257;
};

struct RunConfig {
  GlobalParams params;
  NumericsConfig numerics;
  std::uint64_t seed = 0;
  std::optional<int> K;
  FilterConfig filter;
  std::string output_dir = "out";
};

KernelSpec kernel_from_json(const nlohmann::json& j);
nlohmann::json kernel_to_json(const KernelSpec& k);

/// Throws ConfigError on missing or ill-typed fields and on values that fail
/// validation.
RunConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

/// Reads JSON from disk. Throws MissingInputError if the file cannot be
/// opened and ConfigError if it is not JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);
RunConfig load_config(const std::filesystem::path& path);

/// Summary of a built structure: parameters, K, arcs and per-community totals.
nlohmann::json structure_to_json(const CommunityStructure& s);
/// The arcs recorded in a structure document. Throws ConfigError if absent
/// or malformed.
std::vector<Arc> arcs_from_json(const nlohmann::json& j, double L);

nlohmann::json nash_report_to_json(const NashReport& r);
nlohmann::json expert_plan_to_json(const ExpertPlan& plan);

/// Fixed-format number for CSV and text output; round-trips doubles.
std::string format_number(double v);

/// Writers emit a header row and one row per sample, fixed column order.
void write_demand_csv(const std::filesystem::path& path, const DemandProfile& profile);
void write_production_csv(const std::filesystem::path& path, const ProductionMap& map);
void write_supply_csv(const std::filesystem::path& path, const SupplyRepresentation& rep, double L);
void write_utility_csv(const std::filesystem::path& path, const UtilityProfile& u, double L);
void write_expert_csv(const std::filesystem::path& path, const ExpertPlan& plan);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace community_forge
