#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gkritz/cli.hpp"
#include "random.hpp"

using namespace gkritz;
using namespace gkritz::cli;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(const std::string& line) {
  std::istringstream words(line);
  std::vector<std::string> args;
  for (std::string w; words >> w;) args.push_back(w);
  std::ostringstream out;
  std::ostringstream err;
  const int status = main_entry(args, out, err);
  return {status, out.str(), err.str()};
}

double single_bound(const std::string& line) {
  const auto r = invoke(line + " --format csv --no-timing");
  REQUIRE(r.status == 0);
  const auto report = parse_csv(r.out);
  REQUIRE(report.rows.size() == 1);
  REQUIRE(report.rows[0].bound);
  return *report.rows[0].bound;
}

}  // namespace

TEST_CASE("documented examples") {
  // the csv carries 9 significant digits, so allow half a unit of the last one
  CHECK(std::abs(single_bound("eig --a1 1 --term 0.1:4 --dim 3 --ell 0 -D 10 --level 0") - 3.582194) < 5e-7 + 5e-9);
  CHECK(std::abs(single_bound("first-order --lambda 1000 --mode a") - 21.427793) < 5e-7 + 5e-8);
  CHECK(std::abs(single_bound("first-order --lambda 1000 --mode ab") - 21.374087) < 5e-7 + 5e-8);
  CHECK(std::abs(single_bound("eig --a1 1 --dim 3 --ell 0 -D 1 --level 0") - 3.0) < 1e-9);
}

TEST_CASE("oracle and converge") {
  const auto o = invoke("oracle --a1 1 --term 1:4 --term 1:6 --tol 1e-10 --format json --no-timing");
  REQUIRE(o.status == 0);
  const auto report = parse_json_lines(o.out);
  REQUIRE(report.rows.size() == 1);
  CHECK(std::abs(*report.rows[0].oracle - 5.0) < 1e-8);

  const auto c = invoke("converge --term 0.1:4 --schedule 1,3,5,10,20,40,80 --digits 2 --format csv --no-timing");
  REQUIRE(c.status == 0);
  const auto steps = parse_csv(c.out);
  REQUIRE(steps.rows.size() >= 2);
  CHECK(steps.rows.front().D == 1);
  CHECK(steps.rows.back().pass);
  CHECK(std::abs(*steps.rows.back().bound - 3.5755) < 5e-3);
  CHECK(steps.rows.back().D < 80);

  const auto slow = invoke("converge --term 0.1:4 --schedule 1,3 --digits 6 --format csv --no-timing");
  CHECK(slow.status == 0);
  CHECK_FALSE(parse_csv(slow.out).rows.back().pass);
  CHECK(invoke("converge --term 0.1:4 --schedule 1,3 --digits 6 --strict").status == 1);
}

TEST_CASE("table output") {
  const auto r = invoke("table --id table3 --format csv --no-timing");
  CHECK(r.status == 0);
  const auto report = parse_csv(r.out);
  REQUIRE(report.rows.size() == 9);
  for (int i = 0; i < 9; ++i) CHECK(report.rows[static_cast<std::size_t>(i)].N == i + 2);
  CHECK(invoke("table --id table3 --format csv --no-timing --jobs 4").out == r.out);
}

TEST_CASE("exit status") {
  CHECK(invoke("eig --no-such-flag").status == 2);
  CHECK(invoke("").status == 2);
  CHECK(invoke("eig --term 0.1").status == 2);
  CHECK(invoke("eig --term x:4").status == 2);
  CHECK(invoke("eig --format xml").status == 2);
  CHECK(invoke("eig --init-A 3").status == 2);
  CHECK(invoke("eig -D 3 --level 3").status == 2);
  CHECK(invoke("eig --a1 -1").status == 2);
  CHECK(invoke("eig --term -1:4").status == 2);
  CHECK(invoke("converge --schedule 4,2").status == 2);
  CHECK(invoke("table --id table9").status == 2);
  CHECK(invoke("table --id custom").status == 2);
  CHECK(invoke("first-order --lambda 3 --mode b").status == 2);
  CHECK(invoke("first-order --lambda 0").status == 2);
  const auto usage = invoke("eig --no-such-flag");
  CHECK(usage.err.find("--no-such-flag") != std::string::npos);
  CHECK(usage.err.find("Usage") != std::string::npos);

  SUBCASE("reference mismatches are fatal only under --strict") {
    const std::string line = "eig --term 0.1:4 -D 1 --reference 3.7 --no-timing";
    CHECK(invoke(line).status == 0);
    CHECK(invoke(line + " --strict").status == 1);
    CHECK(invoke("eig --term 0.1:4 -D 1 --reference 3.664281 --strict").status == 0);
  }
  SUBCASE("computation failure") {
    const auto r = invoke("first-order --lambda 0.1 --mode a");
    CHECK(r.status == 1);
    CHECK_FALSE(r.err.empty());
  }
  SUBCASE("unwritable output path") {
    const auto r = invoke("first-order --lambda 1000 --out /nonexistent-dir/x.csv");
    CHECK(r.status == 1);
    CHECK(r.err.find("/nonexistent-dir/x.csv") != std::string::npos);
  }
}

TEST_CASE("help documents the formats") {
  const auto r = invoke("--help");
  CHECK(r.status == 0);
  for (const char* word : {"eig", "oracle", "table", "converge", "first-order", "csv", "json", "human", "--term",
                           "--schedule", "Exit status"}) {
    CHECK_MESSAGE(r.out.find(word) != std::string::npos, word);
  }
  CHECK(invoke("eig --help").status == 0);
}

TEST_CASE("file output matches standard output") {
  const auto path = std::filesystem::temp_directory_path() / "gkritz_cli_test.json";
  const std::string line = "first-order --lambda 1000 --mode ab --format json --no-timing";
  REQUIRE(invoke(line + " --out " + path.string()).status == 0);
  std::ifstream in(path);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == invoke(line).out);
  std::filesystem::remove(path);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::string line = "eig --term 1000:6 -D 15 --format csv --no-timing";
  CHECK(invoke(line).out == invoke(line).out);
}

TEST_CASE("canonical form") {
  CHECK(serialize(parse_config("eig --term 0.1:4 -D 10")) ==
        "eig --a1 1 --term 0.1:4 --dim 3 --ell 0 --level 0 -D 10 --budget 2000 --format human");
  CHECK(serialize(parse_config("table --no-timing --id table2 --format jsonl")) ==
        "table --id table2 --jobs 1 --budget 2000 --format json --no-timing");
  CHECK(serialize(parse_config("first-order --lambda 1e3")) == "first-order --lambda 1000 --mode a --format human");
  const auto quoted = parse_config(R"(oracle --out "my dir/out \"1\".csv")");
  CHECK(*quoted.out == "my dir/out \"1\".csv");
  CHECK(parse_config(serialize(quoted)) == quoted);
}

TEST_CASE("round trip over generated configs") {
  gkritz::testing::Rng rng(77);
  const Command commands[] = {Command::Eig, Command::Oracle, Command::Table, Command::Converge, Command::FirstOrder};
  for (int trial = 0; trial < 200; ++trial) {
    RunConfig c;
    c.command = commands[rng.integer(0, 4)];
    c.format = static_cast<OutputFormat>(rng.integer(0, 2));
    if (rng.integer(0, 1)) c.out = rng.integer(0, 1) ? "out.csv" : "dir with space/r.json";
    c.strict = rng.integer(0, 1) == 1;
    c.timing = rng.integer(0, 1) == 1;
    if (rng.integer(0, 1)) c.tol = rng.uniform(1e-12, 1e-3);
    const bool potential = c.command == Command::Eig || c.command == Command::Oracle || c.command == Command::Converge;
    if (potential) {
      c.potential.a1 = rng.uniform(0.1, 5.0);
      c.potential.N = rng.integer(1, 10);
      c.potential.l = rng.integer(0, 3);
      for (int k = rng.integer(0, 3); k > 0; --k) c.potential.terms.push_back({rng.uniform(0.01, 1000.0), rng.uniform(0.5, 6.0)});
      c.level = rng.integer(0, 2);
    }
    if (c.command != Command::Table && rng.integer(0, 1)) c.reference = rng.uniform(1.0, 30.0);
    switch (c.command) {
      case Command::Eig:
        c.D = rng.integer(c.level + 1, 60);
        c.with_oracle = rng.integer(0, 1) == 1;
        break;
      case Command::Converge:
        c.schedule = {c.level + 1, c.level + 5, c.level + 20};
        c.digits = rng.integer(1, 12);
        break;
      case Command::Table:
        c.table = static_cast<TableId>(rng.integer(0, 4));
        c.with_oracle = rng.integer(0, 1) == 1;
        c.include_slow = rng.integer(0, 1) == 1;
        c.jobs = rng.integer(1, 8);
        break;
      case Command::FirstOrder:
        c.lambda = rng.uniform(0.3, 1e4);
        c.mode = rng.integer(0, 1) ? FirstOrderMode::AOnly : FirstOrderMode::AAndB;
        break;
      case Command::Oracle: break;
    }
    if (c.command == Command::Eig || c.command == Command::Converge) {
      c.fix_B = rng.integer(0, 1) == 1;
      if (rng.integer(0, 1)) c.init = BasisPoint{rng.uniform(1.0, 50.0), rng.uniform(0.1, 20.0)};
    }
    if (c.command == Command::Eig || c.command == Command::Converge || c.command == Command::Table) {
      c.budget = rng.integer(10, 5000);
    }
    const auto text = serialize(c);
    CAPTURE(text);
    const auto back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize(back) == text);
  }
}
