#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ucx/cli.hpp"

using ucx::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Every numeric CSV cell equals the JSON field of the same name, bit for bit.
void check_round_trip(const std::string& csv, const std::string& js) {
  const auto rows = csv_rows(csv);
  const auto arr = nlohmann::json::parse(js);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() + 1 == rows.size());
  const auto& header = rows.front();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      const auto& field = arr[i].at(header[c]);
      if (field.is_string()) {
        CHECK(field.get<std::string>() == rows[i + 1][c]);
      } else {
        CHECK(field.get<double>() == std::strtod(rows[i + 1][c].c_str(), nullptr));
      }
    }
  }
}

}  // namespace

TEST_CASE("parse_eps_grid and parse_point") {
  const auto g = ucx::cli::parse_eps_grid("0:2:5");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 2.0);
  CHECK(g[2] == 1.0);
  CHECK(ucx::cli::parse_eps_grid("1:1:1") == std::vector<double>{1.0});
  CHECK(ucx::cli::parse_eps_grid("0.5") == std::vector<double>{0.5});
  CHECK_THROWS_AS(ucx::cli::parse_eps_grid("0:2"), ucx::cli::UsageError);
  CHECK_THROWS_AS(ucx::cli::parse_eps_grid("a:b:c"), ucx::cli::UsageError);
  CHECK(ucx::cli::parse_point("1,1,2.5") == std::vector<double>{1.0, 1.0, 2.5});
  CHECK_THROWS_AS(ucx::cli::parse_point("-1,1,1"), ucx::cli::UsageError);
  CHECK_THROWS_AS(ucx::cli::parse_point("1,1"), ucx::cli::UsageError);
}

TEST_CASE("RunConfig validation") {
  ucx::cli::RunConfig cfg;
  cfg.p = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ucx::cli::UsageError);
  cfg.p = 2.0;
  cfg.eps = {2.5};
  CHECK_THROWS_AS(cfg.validate(), ucx::cli::UsageError);
  cfg.eps = {1.0};
  cfg.grid_n = 1;
  CHECK_THROWS_AS(cfg.validate(), ucx::cli::UsageError);
  cfg.grid_n = 2;
  cfg.validate();
}

TEST_CASE("table examples") {
  const auto a = invoke({"table", "--p", "2", "--eps", "0:2:5"});
  CHECK(a.code == 0);
  const auto rows = csv_rows(a.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"p", "eps", "delta", "route", "cross_check_residual"});
  CHECK(rows[1][2] == "0");
  CHECK(rows[5][2] == "1");

  const auto b = invoke({"table", "--p", "1.5", "--eps", "1:1:1"});
  CHECK(b.code == 0);
  const auto rb = csv_rows(b.out);
  CHECK(std::stod(rb[1][2]) == doctest::Approx(0.0671226).epsilon(1e-6));
  CHECK(rb[1][3] == "s_star");
  CHECK(std::stod(rb[1][4]) < 1e-8);

  const auto c = invoke({"table", "--p", "4", "--eps", "1:1:1"});
  CHECK(std::stod(csv_rows(c.out)[1][2]) == doctest::Approx(0.0160052).epsilon(1e-6));
  CHECK(csv_rows(c.out)[1][3] == "closed_form");
}

TEST_CASE("verify examples") {
  const auto a = invoke({"verify", "--p", "3", "--grid-n", "10001"});
  CHECK(a.code == 0);
  CHECK(a.out.find("pass=false") == std::string::npos);
  CHECK(a.out.find("claim=witness") != std::string::npos);

  const auto b = invoke({"verify", "--p", "1.5", "--eps", "1"});
  CHECK(b.code == 0);
  CHECK(b.out.find("claim=U_prime_sign pass=true") != std::string::npos);

  const auto c = invoke({"verify", "--p", "1.5"});
  CHECK(c.code == 2);
  CHECK(c.err.find("epsilon required for p<2") != std::string::npos);
}

TEST_CASE("envelope examples") {
  const auto a = invoke({"envelope", "--p", "4", "--grid-n", "50", "--restarts", "4", "--local-steps", "200"});
  CHECK(a.code == 0);
  const auto rows = csv_rows(a.out);
  REQUIRE(rows.size() > 3);
  CHECK(rows[0] == std::vector<std::string>{"x3", "envelope", "certificate", "brute_force"});
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) <= std::stod(rows[i - 1][1]) + 1e-9);

  const auto b = invoke({"envelope", "--p", "2", "--grid-n", "50", "--restarts", "4", "--local-steps", "200"});
  CHECK(b.code == 0);
  const auto rb = csv_rows(b.out);
  for (std::size_t i = 1; i < rb.size(); ++i) {
    CHECK(std::stod(rb[i][1]) == doctest::Approx(1.0 - std::stod(rb[i][0]) / 4.0).epsilon(1e-9));
  }

  const auto c = invoke({"envelope", "--p", "1.5", "--eps", "1", "--grid-n", "50", "--restarts", "4",
                         "--local-steps", "200"});
  CHECK(c.code == 0);
  bool seen = false;
  for (const auto& r : csv_rows(c.out)) {
    if (r[0] != "1") continue;
    seen = true;
    CHECK(std::stod(r[1]) == doctest::Approx(0.901025).epsilon(5e-3));
  }
  CHECK(seen);
}

TEST_CASE("bruteforce examples") {
  const auto a = invoke({"bruteforce", "--p", "4", "--x", "1,1,1", "--seed", "7"});
  CHECK(a.code == 0);
  const auto value_pos = a.out.find("value=");
  REQUIRE(value_pos != std::string::npos);
  const double v = std::stod(a.out.substr(value_pos + 6));
  CHECK(v >= 0.93);
  CHECK(v <= 0.9375);

  const auto b = invoke({"bruteforce", "--p", "3", "--x", "1,1,8"});
  CHECK(b.code == 0);
  CHECK(std::stod(b.out.substr(b.out.find("value=") + 6)) <= 1e-6);

  CHECK(invoke({"bruteforce", "--p", "2", "--x", "-1,1,1"}).code == 2);
  CHECK(invoke({"bruteforce", "--p", "2", "--x=-1,1,1"}).code == 2);
  CHECK(invoke({"bruteforce", "--p", "2", "--x", "1,1,9"}).code == 1);
  CHECK(invoke({"bruteforce", "--p", "2"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"table"}).code == 2);
  CHECK(invoke({"table", "--p", "1"}).code == 2);
  CHECK(invoke({"table", "--p", "2", "--eps", "3"}).code == 2);
  CHECK(invoke({"table", "--p", "2", "--format", "xml"}).code == 2);
  CHECK(invoke({"frobnicate", "--p", "2"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("identical command lines give identical bytes") {
  const std::vector<std::string> env{"envelope", "--p", "1.5", "--eps", "1", "--grid-n", "20", "--slices", "5",
                                     "--restarts", "6", "--local-steps", "200", "--seed", "9"};
  const auto a = invoke(env), b = invoke(env);
  CHECK(a.out == b.out);
  const std::vector<std::string> ver{"verify", "--p", "1.5", "--eps", "1", "--trials", "2000", "--seed", "4"};
  CHECK(invoke(ver).out == invoke(ver).out);
}

TEST_CASE("csv and json carry the same numbers") {
  check_round_trip(invoke({"table", "--p", "1.7", "--eps", "0:2:9"}).out,
                   invoke({"table", "--p", "1.7", "--eps", "0:2:9", "--format", "json"}).out);
  const std::vector<std::string> env{"envelope", "--p", "3", "--grid-n", "12", "--slices", "4",
                                     "--restarts", "3", "--local-steps", "100"};
  auto env_json = env;
  env_json.insert(env_json.end(), {"--format", "json"});
  check_round_trip(invoke(env).out, invoke(env_json).out);

  const auto js = nlohmann::json::parse(invoke({"verify", "--p", "2.5", "--format", "json", "--trials", "100"}).out);
  REQUIRE(js.is_array());
  CHECK(js.front().contains("claim"));
  CHECK(js.front().contains("pass"));
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "ucx_cli_output_test.csv";
  std::filesystem::remove(path);
  const auto a = invoke({"table", "--p", "2", "--eps", "1", "--output", path.string()});
  CHECK(a.code == 0);
  CHECK(a.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "p,eps,delta,route,cross_check_residual");
  std::filesystem::remove(path);
}
