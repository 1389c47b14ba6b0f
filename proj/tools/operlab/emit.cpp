#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cli.hpp"
#include "operlab/errors.hpp"

namespace operlab::cli {

namespace {

void write_value(std::string& out, const Record& v) {
  switch (v.type()) {
    case Record::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, val] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += Record(key).dump();
        out += ':';
        write_value(out, val);
      }
      out += '}';
      break;
    }
    case Record::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        write_value(out, v[i]);
      }
      out += ']';
      break;
    }
    case Record::value_t::number_float:
      out += format_double(v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + p.string() + "'");
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep floats recognisable as floats on re-parse.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string to_json_line(const Record& r) {
  std::string out;
  write_value(out, r);
  return out;
}

std::string to_jsonl(const std::vector<Record>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json_line(r);
    out += '\n';
  }
  return out;
}

std::string to_csv(const CsvGrid& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.columns.size(); ++i) {
    if (i) out += ',';
    out += grid.columns[i];
  }
  out += '\n';
  for (const auto& row : grid.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void emit(const Results& results, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
  write_file(fs::path(dir) / "result.jsonl", to_jsonl(results.records));
  if (results.grids.empty()) return;
  fs::create_directories(fs::path(dir) / "grids", ec);
  if (ec) throw std::runtime_error("cannot create grids directory: " + ec.message());
  for (const auto& g : results.grids) write_file(fs::path(dir) / "grids" / (g.name + ".csv"), to_csv(g));
}

int run_cli(int argc, char** argv) {
  CLI::App app{"operlab: Gaudin spectra, Bethe roots, opers and Hecke eigenvalues"};
  std::string pipeline, config, out_dir = ".";
  std::uint64_t seed = 1;
  int jobs = 1;
  app.add_option("pipeline", pipeline, "Pipeline to run")->required()->check(CLI::IsMember(pipeline_names()));
  app.add_option("--config", config, "Scenario file (YAML)")->required();
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--jobs", jobs, "Worker thread cap")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Scenario s;
  try {
    s = load_scenario(config, *parse_pipeline(pipeline));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  s.seed = seed;
  s.jobs = jobs;

  try {
    emit(run(s), out_dir);
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    Results failed;
    Record r;
    r["record"] = "error";
    r["pipeline"] = to_string(s.kind);
    r["kind"] = operlab::to_string(e.kind());
    r["message"] = e.what();
    failed.records.push_back(r);
    try {
      emit(failed, out_dir);
    } catch (const std::exception& io) {
      std::cerr << io.what() << "\n";
    }
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace operlab::cli
