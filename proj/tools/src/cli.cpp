#include "gkritz/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gkritz/oracle.hpp"

namespace gkritz::cli {

std::string to_string(Command c) {
  switch (c) {
    case Command::Eig: return "eig";
    case Command::Oracle: return "oracle";
    case Command::Table: return "table";
    case Command::Converge: return "converge";
    case Command::FirstOrder: return "first-order";
  }
  return "eig";
}

namespace {

constexpr const char* kFormatsHelp = R"(Output formats (--format):
  human   aligned table, one line per row, then "k/n rows pass"
  csv     header row,N,l,D,level,A_star,B_star,bound,oracle,reference,deviation,pass,wall_ms;
          empty field = not computed; pass is true/false
  json    JSON lines (also json-lines, jsonl): one object per row with the csv keys;
          null = not computed
Numbers carry 9 significant digits with a '.' decimal point. wall_ms is 0 under --no-timing.
Exit status: 0 success (reference mismatches are reported, not fatal), 1 computation
failure or, with --strict, any failing row; 2 usage error.)";

// Raw option values; turned into a RunConfig after CLI11 has run.
struct Raw {
  double a1 = 1.0;
  std::vector<std::string> terms;
  int dim = 3;
  int ell = 0;
  int D = 10;
  int level = 0;
  bool fix_B = false;
  std::optional<double> init_A;
  std::optional<double> init_B;
  std::optional<double> tol;
  std::optional<double> reference;
  bool with_oracle = false;
  int budget = 2000;
  std::vector<int> schedule;
  int digits = 6;
  std::string id;
  bool include_slow = false;
  double lambda = 0.0;
  std::string mode = "a";
  std::string format = "human";
  std::optional<std::string> out;
  bool strict = false;
  int jobs = 1;
  bool no_timing = false;
};

struct App {
  CLI::App app{"Variational eigenvalue bounds for singular anharmonic radial Hamiltonians", "gkritz"};
  Raw raw;
  CLI::App* eig = nullptr;
  CLI::App* oracle = nullptr;
  CLI::App* table = nullptr;
  CLI::App* converge = nullptr;
  CLI::App* first_order = nullptr;
};

void add_potential(CLI::App* c, Raw& r) {
  c->add_option("--a1", r.a1, "coefficient of r^2 (> 0)")->capture_default_str();
  c->add_option("--term", r.terms, "singular term lambda:alpha, i.e. lambda * r^-alpha; repeatable")
      ->type_name("LAMBDA:ALPHA")
      ->take_all()
      ->allow_extra_args(false);
  c->add_option("--dim", r.dim, "space dimension N (>= 1)")->capture_default_str();
  c->add_option("--ell", r.ell, "angular momentum l (>= 0)")->capture_default_str();
  c->add_option("--level", r.level, "target level (0 = ground state)")->capture_default_str();
}

void add_basis(CLI::App* c, Raw& r) {
  c->add_flag("--fix-B", r.fix_B, "pin B (to --init-B, else a1) and optimize A only");
  c->add_option("--init-A", r.init_A, "extra optimizer start, A");
  c->add_option("--init-B", r.init_B, "extra optimizer start, B");
  c->add_option("--budget", r.budget, "objective evaluations per start")->capture_default_str();
}

void add_output(CLI::App* c, Raw& r) {
  c->add_option("--format", r.format, "human | csv | json")->capture_default_str();
  c->add_option("--out", r.out, "write to this file instead of standard output");
  c->add_flag("--strict", r.strict, "exit 1 if any row fails its comparison");
  c->add_flag("--no-timing", r.no_timing, "report wall_ms as 0 for byte-stable output");
}

std::unique_ptr<App> make_app() {
  auto a = std::make_unique<App>();
  Raw& r = a->raw;
  a->app.require_subcommand(1, 1);
  a->app.footer(kFormatsHelp);

  a->eig = a->app.add_subcommand("eig", "optimized upper bound for one level at one basis size");
  add_potential(a->eig, r);
  a->eig->add_option("-D", r.D, "basis size")->capture_default_str();
  add_basis(a->eig, r);
  a->eig->add_option("--tol", r.tol, "comparison tolerance (default 5e-7)");
  a->eig->add_option("--reference", r.reference, "value to compare the bound against");
  a->eig->add_flag("--with-oracle", r.with_oracle, "also integrate the radial equation directly");
  add_output(a->eig, r);

  a->oracle = a->app.add_subcommand("oracle", "eigenvalue by direct integration of the radial equation");
  add_potential(a->oracle, r);
  a->oracle->add_option("--tol", r.tol, "energy tolerance (default 1e-9)");
  a->oracle->add_option("--reference", r.reference, "value to compare against");
  add_output(a->oracle, r);

  a->table = a->app.add_subcommand("table", "reproduce a built-in reference table");
  a->table->add_option("--id", r.id, "table1 .. table5")->required();
  a->table->add_flag("--with-oracle", r.with_oracle, "add the direct-integration value to every row");
  a->table->add_flag("--include-slow", r.include_slow, "also run the large-D rows");
  a->table->add_option("--tol", r.tol, "override every row's tolerance");
  a->table->add_option("--budget", r.budget, "objective evaluations per start")->capture_default_str();
  a->table->add_option("--jobs", r.jobs, "rows run concurrently")->capture_default_str();
  add_output(a->table, r);

  a->converge = a->app.add_subcommand("converge", "grow D along a schedule until the bound settles");
  add_potential(a->converge, r);
  a->converge->add_option("--schedule", r.schedule, "increasing basis sizes, e.g. 1,10,20,100")
      ->delimiter(',')
      ->required();
  a->converge->add_option("--digits", r.digits, "stop when two steps agree to this many decimals")
      ->capture_default_str();
  add_basis(a->converge, r);
  a->converge->add_option("--tol", r.tol, "comparison tolerance (default 5e-7)");
  a->converge->add_option("--reference", r.reference, "value to compare the final bound against");
  add_output(a->converge, r);

  a->first_order = a->app.add_subcommand("first-order", "D = 1 ground-state bound for r^2 + lambda r^-4, N = 3");
  a->first_order->add_option("--lambda", r.lambda, "coupling (> 0)")->required();
  a->first_order->add_option("--mode", r.mode, "a (B = 1) | ab (optimize both)")->capture_default_str();
  a->first_order->add_option("--tol", r.tol, "comparison tolerance (default 5e-7)");
  a->first_order->add_option("--reference", r.reference, "value to compare against");
  add_output(a->first_order, r);
  return a;
}

double parse_double(std::string_view s, const std::string& what) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw UsageError(what + ": not a number: '" + std::string(s) + "'");
  }
  return x;
}

SingularTerm parse_term(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--term expects lambda:alpha, got '" + text + "'");
  return {parse_double(std::string_view(text).substr(0, colon), "--term lambda"),
          parse_double(std::string_view(text).substr(colon + 1), "--term alpha")};
}

RunConfig build(const App& a) {
  const Raw& r = a.raw;
  RunConfig c;
  CLI::App* used = nullptr;
  for (auto [cmd, sub] : {std::pair{Command::Eig, a.eig}, std::pair{Command::Oracle, a.oracle},
                          std::pair{Command::Table, a.table}, std::pair{Command::Converge, a.converge},
                          std::pair{Command::FirstOrder, a.first_order}}) {
    if (sub->parsed()) {
      c.command = cmd;
      used = sub;
    }
  }
  if (!used) throw UsageError("a subcommand is required");

  const auto fmt = parse_output_format(r.format);
  if (!fmt) throw UsageError("--format must be human, csv or json, got '" + r.format + "'");
  c.format = *fmt;
  c.out = r.out;
  c.strict = r.strict;
  c.timing = !r.no_timing;
  c.tol = r.tol;
  c.reference = r.reference;
  if (c.tol && !(*c.tol > 0.0)) throw UsageError("--tol must be > 0");

  const bool has_potential = c.command == Command::Eig || c.command == Command::Oracle || c.command == Command::Converge;
  if (has_potential) {
    c.potential.a1 = r.a1;
    c.potential.N = r.dim;
    c.potential.l = r.ell;
    for (const auto& t : r.terms) c.potential.terms.push_back(parse_term(t));
    try {
      c.potential.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (r.level < 0) throw UsageError("--level must be >= 0");
    c.level = r.level;
  }
  const bool has_basis = c.command == Command::Eig || c.command == Command::Converge;
  if (has_basis) {
    if (r.init_A.has_value() != r.init_B.has_value()) throw UsageError("--init-A and --init-B go together");
    if (r.init_A) {
      if (!(*r.init_B > 0.0)) throw UsageError("--init-B must be > 0");
      c.init = BasisPoint{*r.init_A, *r.init_B};
    }
    c.fix_B = r.fix_B;
    if (r.budget < 1) throw UsageError("--budget must be >= 1");
    c.budget = r.budget;
  }
  switch (c.command) {
    case Command::Eig:
      if (r.D < 1) throw UsageError("-D must be >= 1");
      if (r.level >= r.D) throw UsageError("--level must be below -D");
      c.D = r.D;
      c.with_oracle = r.with_oracle;
      break;
    case Command::Oracle:
      break;
    case Command::Table: {
      const auto id = parse_table_id(r.id);
      if (!id || *id == TableId::Custom) throw UsageError("--id must be one of table1 .. table5, got '" + r.id + "'");
      c.table = *id;
      c.with_oracle = r.with_oracle;
      c.include_slow = r.include_slow;
      if (r.budget < 1) throw UsageError("--budget must be >= 1");
      c.budget = r.budget;
      if (r.jobs < 1) throw UsageError("--jobs must be >= 1");
      c.jobs = r.jobs;
      break;
    }
    case Command::Converge:
      if (r.schedule.empty()) throw UsageError("--schedule is empty");
      for (std::size_t i = 0; i < r.schedule.size(); ++i) {
        if (r.schedule[i] < 1 || (i > 0 && r.schedule[i] <= r.schedule[i - 1])) {
          throw UsageError("--schedule must be strictly increasing positive sizes");
        }
      }
      if (r.level >= r.schedule.front()) throw UsageError("--level must be below the first schedule entry");
      if (r.digits < 1 || r.digits > 15) throw UsageError("--digits must be in 1 .. 15");
      c.schedule = r.schedule;
      c.digits = r.digits;
      break;
    case Command::FirstOrder:
      if (r.mode == "a") {
        c.mode = FirstOrderMode::AOnly;
      } else if (r.mode == "ab") {
        c.mode = FirstOrderMode::AAndB;
      } else {
        throw UsageError("--mode must be a or ab, got '" + r.mode + "'");
      }
      if (!(r.lambda > 0.0)) throw UsageError("--lambda must be > 0");
      c.lambda = r.lambda;
      break;
  }
  return c;
}

std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string quote(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\n\"\\") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  bool in_token = false;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '\\' && i + 1 < text.size()) {
        cur += text[++i];
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
      in_token = true;
    } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      if (in_token) out.push_back(std::move(cur));
      cur.clear();
      in_token = false;
    } else {
      cur += ch;
      in_token = true;
    }
  }
  if (quoted) throw UsageError("unterminated quote");
  if (in_token) out.push_back(std::move(cur));
  return out;
}

ReportRow base_row(const RunConfig& c, std::string label, int D) {
  ReportRow row;
  row.row = std::move(label);
  row.N = c.potential.N;
  row.l = c.potential.l;
  row.D = D;
  row.level = c.level;
  row.reference = c.reference;
  return row;
}

MinimizeOptions minimize_options(const RunConfig& c) {
  MinimizeOptions mo;
  mo.budget = c.budget;
  mo.init = c.init;
  if (c.fix_B) mo.fixed_B = c.init ? c.init->B : c.potential.a1;
  return mo;
}

TableReport compute(const RunConfig& c) {
  const double tol = c.tol.value_or(kReferenceTolerance);
  TableReport report;
  report.title = to_string(c.command);
  const auto t0 = std::chrono::steady_clock::now();
  auto stamp = [&](ReportRow& row) {
    if (c.timing) row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  switch (c.command) {
    case Command::Eig: {
      const auto r = minimize_bound(c.potential, c.D, c.level, minimize_options(c));
      ReportRow row = base_row(c, describe(c.potential), c.D);
      row.A_star = r.A_star;
      row.B_star = r.B_star;
      row.bound = r.bound();
      row.evaluations = r.evaluations;
      if (c.with_oracle) row.oracle = shoot_eigenvalue(c.potential, c.level, 1e-9).energy;
      grade(row, tol);
      stamp(row);
      report.rows.push_back(row);
      break;
    }
    case Command::Oracle: {
      const auto r = shoot_eigenvalue(c.potential, c.level, c.tol.value_or(1e-9));
      ReportRow row = base_row(c, describe(c.potential), 0);
      row.oracle = r.energy;
      if (row.reference) row.deviation = std::abs(r.energy - *row.reference);
      row.pass = !row.deviation || *row.deviation <= c.tol.value_or(kReferenceTolerance);
      stamp(row);
      report.rows.push_back(row);
      break;
    }
    case Command::Table: {
      RunTableOptions o;
      o.tolerance = c.tol;
      o.with_oracle = c.with_oracle;
      o.include_slow = c.include_slow;
      o.jobs = c.jobs;
      o.record_timing = c.timing;
      o.budget = c.budget;
      report = run_table(builtin_job(c.table), o);
      break;
    }
    case Command::Converge: {
      const auto r = converge_to_digits(c.potential, c.level, c.digits, c.schedule, minimize_options(c));
      for (std::size_t i = 0; i < r.history.size(); ++i) {
        const auto& [D, b] = r.history[i];
        ReportRow row = base_row(c, "D=" + std::to_string(D), D);
        row.A_star = b.A_star;
        row.B_star = b.B_star;
        row.bound = b.bound();
        row.evaluations = b.evaluations;
        const bool last = i + 1 == r.history.size();
        if (!last) row.reference.reset();
        grade(row, tol);
        if (last && !r.converged) row.pass = false;
        stamp(row);
        report.rows.push_back(row);
      }
      break;
    }
    case Command::FirstOrder: {
      ReportRow row;
      row.row = std::string("lambda=") + num(c.lambda) + (c.mode == FirstOrderMode::AOnly ? " mode=a" : " mode=ab");
      row.D = 1;
      row.bound = ground_state_first_order(c.lambda, c.mode);
      row.reference = c.reference;
      grade(row, tol);
      stamp(row);
      report.rows.push_back(row);
      break;
    }
  }
  return report;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  auto a = make_app();
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    a->app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return build(*a);
}

RunConfig parse_config(std::string_view text) { return parse_args(tokenize(text)); }

std::string serialize(const RunConfig& c) {
  std::ostringstream s;
  s << to_string(c.command);
  const bool has_potential = c.command == Command::Eig || c.command == Command::Oracle || c.command == Command::Converge;
  if (has_potential) {
    s << " --a1 " << num(c.potential.a1);
    for (const auto& t : c.potential.terms) s << " --term " << num(t.lambda) << ':' << num(t.alpha);
    s << " --dim " << c.potential.N << " --ell " << c.potential.l << " --level " << c.level;
  }
  switch (c.command) {
    case Command::Eig: s << " -D " << c.D; break;
    case Command::Converge:
      s << " --schedule ";
      for (std::size_t i = 0; i < c.schedule.size(); ++i) s << (i ? "," : "") << c.schedule[i];
      s << " --digits " << c.digits;
      break;
    case Command::Table:
      s << " --id " << to_string(c.table);
      if (c.include_slow) s << " --include-slow";
      s << " --jobs " << c.jobs;
      break;
    case Command::FirstOrder:
      s << " --lambda " << num(c.lambda) << " --mode " << (c.mode == FirstOrderMode::AOnly ? "a" : "ab");
      break;
    case Command::Oracle: break;
  }
  if (c.command == Command::Eig || c.command == Command::Converge) {
    if (c.fix_B) s << " --fix-B";
    if (c.init) s << " --init-A " << num(c.init->A) << " --init-B " << num(c.init->B);
  }
  if (c.command == Command::Eig || c.command == Command::Converge || c.command == Command::Table) {
    s << " --budget " << c.budget;
  }
  if (c.with_oracle && (c.command == Command::Eig || c.command == Command::Table)) s << " --with-oracle";
  if (c.tol) s << " --tol " << num(*c.tol);
  if (c.reference && c.command != Command::Table) s << " --reference " << num(*c.reference);
  s << " --format " << to_string(c.format);
  if (c.out) s << " --out " << quote(*c.out);
  if (c.strict) s << " --strict";
  if (!c.timing) s << " --no-timing";
  return s.str();
}

std::string help_text() {
  auto a = make_app();
  std::string text = a->app.help("", CLI::AppFormatMode::Normal);
  for (CLI::App* sub : {a->eig, a->oracle, a->table, a->converge, a->first_order}) {
    text += "\n" + sub->help("", CLI::AppFormatMode::Sub);
  }
  return text;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  TableReport report;
  try {
    report = compute(config);
  } catch (const std::exception& e) {
    err << "gkritz " << to_string(config.command) << ": " << e.what() << '\n';
    return 1;
  }
  try {
    if (config.out) {
      write_results(report, config.format, *config.out);
    } else {
      emit_results(report, config.format, out);
    }
  } catch (const std::exception& e) {
    err << "gkritz: " << e.what() << '\n';
    return 1;
  }
  for (const auto& row : report.rows) {
    if (!row.error.empty()) return 1;
  }
  if (config.strict && !report.all_pass()) return 1;
  return 0;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const CLI::CallForHelp&) {
    out << help_text();
    return 0;
  } catch (const UsageError& e) {
    err << "gkritz: " << e.what() << "\n\n" << help_text();
    return 2;
  }
  return run(config, out, err);
}

}  // namespace gkritz::cli
