#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gkritz/hamiltonian.hpp"

namespace gkritz {

enum class TableId { Table1, Table2, Table3, Table4, Table5, Custom };

std::string to_string(TableId id);
std::optional<TableId> parse_table_id(std::string_view text);

/// Half a unit in the sixth decimal, the precision of the reference values.
inline constexpr double kReferenceTolerance = 5e-7;

/// One row of a reproduction job.
///
/// The schedule is the warm-start path: minimize_bound runs at each D in turn,
/// seeded with the previous optimum, and the last entry is the reported size.
struct TableRow {
  std::string label;
  PotentialSpec potential;
  std::vector<int> schedule;
  int target_level = 0;
  std::optional<double> fixed_B;
  std::optional<double> reference;
  std::string source;  // provenance of `reference`
  double tolerance = kReferenceTolerance;
  bool slow = false;

  int D() const { return schedule.back(); }
};

struct TableJob {
  TableId id = TableId::Custom;
  std::vector<TableRow> rows;
};

/// Built-in reference data for table1 .. table5.
TableJob builtin_job(TableId id);

struct ReportRow {
  std::string row;
  int N = 3;
  int l = 0;
  int D = 0;
  int level = 0;
  std::optional<double> A_star;
  std::optional<double> B_star;
  std::optional<double> bound;
  std::optional<double> oracle;
  std::optional<double> reference;
  std::optional<double> deviation;
  bool pass = false;
  double wall_ms = 0.0;
  int evaluations = 0;
  std::string error;  // empty unless the row failed

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct TableReport {
  std::string title;
  std::vector<ReportRow> rows;

  bool all_pass() const;
  friend bool operator==(const TableReport&, const TableReport&) = default;
};

struct RunTableOptions {
  std::optional<double> tolerance;  // overrides every row's tolerance
  bool with_oracle = false;
  bool include_slow = false;
  int jobs = 1;
  double oracle_tol = 1e-9;
  bool record_timing = true;  // false leaves wall_ms at 0 for byte-stable output
  int budget = 2000;
};

/// Sets deviation and pass from bound, reference and oracle:
/// against the reference when present, otherwise against the oracle.
void grade(ReportRow& row, double tolerance);

/// Runs every row (skipping slow rows unless requested). Row failures are
/// recorded in the row and never abort the table.
TableReport run_table(const TableJob& job, const RunTableOptions& options = {});

}  // namespace gkritz
