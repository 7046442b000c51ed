#pragma once

// Declarative experiment driver behind the `rootlab` command.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootlab/diagnostics.hpp"

namespace rootlab::cli {

enum class Experiment { dyn_figure, dyn_verify, binomial_verify, ortho_verify, sparsity, potential_report };

const char* to_string(Experiment e);

struct Config {
  Experiment experiment;
  std::vector<cplx> poly;   ///< coefficients, lowest degree first
  std::vector<cplx> atoms;
  std::vector<double> weights;  ///< empty means uniform
  std::optional<Rect> window;
  std::vector<unsigned> ks;
  std::optional<unsigned> m;
  unsigned depth = 4;
  unsigned grid = 512;
  std::filesystem::path out = ".";
  std::map<std::string, double> tol;

  double tolerance(const std::string& name) const;
};

/// Known tolerance names and their defaults.
const std::map<std::string, double>& default_tolerances();

class ConfigError : public std::runtime_error {
 public:
  ConfigError(unsigned line, const std::string& field, const std::string& what)
      : std::runtime_error(line == 0 ? field + ": " + what
                                     : "line " + std::to_string(line) + ": " + field + ": " + what),
        line_(line) {}
  unsigned line() const noexcept { return line_; }

 private:
  unsigned line_;
};

/// Parses `key = value` lines (`#` starts a comment). Throws ConfigError.
Config parse_config(std::istream& in);
Config load_config(const std::filesystem::path& file);

enum ExitCode { exit_pass = 0, exit_assertion = 1, exit_config = 2, exit_numerical = 3 };

/// Runs the experiment, writes its files under cfg.out and prints one
/// PASS/FAIL line per assertion to `log`. Returns the exit code.
int run(const Config& cfg, std::ostream& log);

// CSV files. Numbers are written with 17 significant digits so reading them
// back reproduces the doubles exactly.

void write_roots_csv(const std::filesystem::path& file, const RootSet& rs);
RootSet read_roots_csv(const std::filesystem::path& file);

void write_critical_points_csv(const std::filesystem::path& file, const std::vector<CriticalPoint>& pts);
std::vector<CriticalPoint> read_critical_points_csv(const std::filesystem::path& file);

void write_grid_csv(const std::filesystem::path& file, const std::vector<GridSample>& samples);
std::vector<GridSample> read_grid_csv(const std::filesystem::path& file);

}  // namespace rootlab::cli
