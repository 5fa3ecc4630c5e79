#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sclab/audit.hpp"
#include "sclab/profile.hpp"

namespace sclab {

// Config problem tied to a source line (0 when unknown).
class ConfigError : public InputError {
 public:
  ConfigError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct AuditSpec {
  std::string name;
  std::map<std::string, double> params;
  bool advisory = false;
  int line = 0;
};

struct Scenario {
  std::string name;
  std::string gallery;
  std::map<std::string, double> gallery_params;
  double beta = 1.0;
  std::optional<double> lambda;  // defaults per supersolution source
  std::vector<AuditSpec> audits;
  std::optional<std::size_t> grid_n;
  int line = 0;
};

// kind "scaling": power_neck radii; kind "rigidity": spheroid ε values.
struct SweepSpec {
  std::string name;
  std::string kind;
  double beta = 0.4;
  std::vector<double> values;
  std::optional<std::size_t> grid_n;
  int line = 0;
};

struct Config {
  int version = 1;
  std::uint64_t seed = 1;
  std::size_t grid_n = 2048;
  std::vector<Scenario> scenarios;
  std::vector<SweepSpec> sweeps;
};

// Parses and validates everything (gallery names, parameters, audit names)
// before any computation. Throws ConfigError.
Config parse_config(const std::string& text);
Config load_config(const std::filesystem::path& path);

const std::vector<std::string>& audit_names();

struct ScenarioReport {
  std::string name;
  std::string kind;  // scenario, scaling or rigidity
  std::vector<AuditRecord> records;
  std::string data_csv;  // sweep table, empty for scenarios
  std::string error;     // set when the scenario threw

  bool failed() const;
};

struct RunOptions {
  std::optional<std::size_t> grid_n;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
  bool sweeps_only = false;
};

ScenarioReport run_scenario(const Scenario& s, std::size_t grid_n, std::uint64_t seed);
ScenarioReport run_sweep(const SweepSpec& s, std::size_t grid_n);

inline constexpr int kCsvVersion = 1;
std::string records_csv(const ScenarioReport& r);
std::string report_json(const ScenarioReport& r);

// Writes <name>.csv and <name>.json (plus <name>_data.csv for sweeps).
// Returns 0 when every non-advisory record passed, else 1.
int run_config(const Config& c, const RunOptions& opt, std::ostream& log);

std::string gallery_listing(bool json, std::optional<Topology> filter = std::nullopt);

}  // namespace sclab
