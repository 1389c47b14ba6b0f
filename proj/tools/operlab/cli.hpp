#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "operlab/config.hpp"

namespace operlab::cli {

enum class Pipeline { Spectrum, Bethe, OperVerify, Monodromy, BalancedScan, HeckeScan, ChiralCheck };

const std::vector<std::string>& pipeline_names();
std::optional<Pipeline> parse_pipeline(const std::string& name);
const char* to_string(Pipeline p);

// Invalid scenario file or option; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Knobs {
  double tol = 1e-8;           // diagonalization clustering
  int draws = 3;
  double bae_tol = 1e-10;
  int seeds = 64;
  double ode_tol = 1e-10;
  double classify_tol = 1e-6;
  std::string capped = "auto";  // auto | true | false
  std::vector<std::string> mu;  // explicit accessory parameters (monodromy, oper-verify)
  double stencil_h = 1e-3;
};

struct BalancedKnobs {
  std::vector<double> t;
  std::vector<double> c_imag;  // one per point including infinity
  double lo = -4, hi = 4, step = 0.05, a_tol = 1e-6;
};

struct HeckeKnobs {
  std::string mode = "beta";  // beta | 3pt
  double a = 0, b = 0, c = 0;  // imaginary parts for 3pt
  std::vector<double> x{1e3};
  int solution = 0;
  double re_lo = -1, re_hi = 3, im_lo = 0.25, im_hi = 2.25;
  int nx = 50, ny = 50;
  bool pde = false;
  double pde_h = 2e-3;
};

struct ChiralKnobs {
  std::vector<std::string> x{"1/7", "-3/2", "11"};
};

struct Scenario {
  Pipeline kind = Pipeline::Spectrum;
  bool has_config = false;
  GaudinConfig config;
  std::optional<RationalConfig> exact;  // present when every entry is an integer or fraction
  Knobs knobs;
  BalancedKnobs balanced;
  HeckeKnobs hecke;
  ChiralKnobs chiral;
  std::uint64_t seed = 1;
  int jobs = 1;
};

// Throws ConfigError naming the offending field or invariant.
Scenario parse_scenario(const std::string& text, Pipeline kind);
Scenario load_scenario(const std::string& path, Pipeline kind);

using Record = nlohmann::ordered_json;

struct CsvGrid {
  std::string name;  // written to grids/<name>.csv
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Results {
  std::vector<Record> records;
  std::vector<CsvGrid> grids;
};

// Throws operlab::Error on numeric failure.
Results run(const Scenario& s);

std::string format_double(double v);     // 17 significant digits
std::string to_json_line(const Record& r);
std::string to_jsonl(const std::vector<Record>& records);
std::string to_csv(const CsvGrid& grid);

// Writes result.jsonl and grids/*.csv under dir. Throws std::runtime_error on IO failure.
void emit(const Results& results, const std::string& dir);

// Full command line entry; returns the process exit code (0 ok, 2 config error, 3 numeric failure).
int run_cli(int argc, char** argv);

}  // namespace operlab::cli
