#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gkritz/optimizer.hpp"
#include "gkritz/report_io.hpp"
#include "gkritz/tables.hpp"

namespace gkritz::cli {

enum class Command { Eig, Oracle, Table, Converge, FirstOrder };

std::string to_string(Command c);

/// Everything one invocation needs. Fields that a command does not use keep
/// their defaults and are left out of the canonical text.
struct RunConfig {
  Command command = Command::Eig;

  PotentialSpec potential;
  std::optional<BasisPoint> init;
  bool fix_B = false;  // pin B to the --init-B value, or to a1
  int D = 10;
  std::vector<int> schedule;
  int level = 0;
  std::optional<double> tol;
  std::optional<double> reference;
  bool with_oracle = false;
  int budget = 2000;
  int digits = 6;

  TableId table = TableId::Table1;
  bool include_slow = false;

  double lambda = 0.0;
  FirstOrderMode mode = FirstOrderMode::AOnly;

  OutputFormat format = OutputFormat::Human;
  std::optional<std::string> out;
  bool strict = false;
  int jobs = 1;
  bool timing = true;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Raised for anything that should exit with status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses arguments without the program name. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// Splits a command line on whitespace, honouring double quotes, then parses it.
RunConfig parse_config(std::string_view text);

/// Canonical command line: fixed flag order, shortest round-trip numbers.
std::string serialize(const RunConfig& config);

/// Full usage text, including the output format reference.
std::string help_text();

/// Runs a parsed config and returns the exit status (0 ok, 1 failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, mapping usage errors to status 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gkritz::cli
