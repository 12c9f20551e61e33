#include "scarf/io.hpp"
#include "scarf/marriage.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace scarf;

static const char *table_text = R"(# ten men, ten women, lists of four
10
1 2 7 8
2 3 8 9
3 4 9 10
4 5 10 1
5 6 1 2
6 7 2 3
7 8 3 4
8 9 4 5
9 10 5 6
10 1 6 7

4 5 10 1
5 6 1 2
6 7 2 3
7 8 3 4
8 9 4 5
9 10 5 6
10 1 6 7
1 2 7 8
2 3 8 9
3 4 9 10
)";

TEST_CASE("instance text matches the table fixture", "[io]") {
  const auto inst = parse_instance(table_text);
  CHECK(inst == fixture("table_8_2"));
  CHECK(inst.men_given[3] == 4);
  CHECK(inst.men[3] == std::vector<int>{3, 4, 9, 0, 1, 2, 5, 6, 7, 8});
}

TEST_CASE("smallest instance", "[io]") {
  const auto inst = parse_instance("1\n1\n1\n");
  CHECK(inst.k == 1);
  CHECK(inst.men == std::vector<std::vector<int>>{{0}});
  CHECK(parse_instance("1\r\n1\r\n1") == inst);
}

static void expect_parse_error(const std::string &text, int line, int column) {
  try {
    parse_instance(text);
    FAIL("accepted: " << text);
  } catch (const ParseError &e) {
    CHECK(e.line == line);
    CHECK(e.column == column);
  }
}

TEST_CASE("instance parse errors carry positions", "[io]") {
  expect_parse_error("", 1, 1);
  expect_parse_error("2 2\n", 1, 3);
  expect_parse_error("x\n", 1, 1);
  expect_parse_error("0\n", 1, 1);
  expect_parse_error("2\n1 2\n2 1\n1 2\n", 5, 1);
  expect_parse_error("2\n1 2\n2 x1\n1 2\n2 1\n", 3, 3);
  expect_parse_error("2\n1 2\n2 3\n1 2\n2 1\n", 3, 3);
  expect_parse_error("2\n1 2\n2 1\n1 2\n2 1\n1 2\n", 6, 1);
  expect_parse_error("2\n1 2\n2 1\n1 2\n  -1\n", 5, 3);
  expect_parse_error("2\n1 2\n2 1\n1 2\n2 1.5\n", 5, 3);
  CHECK_THROWS_AS(parse_instance("2\n1 1\n2 1\n1 2\n2 1\n"), InvalidPermutation);
  CHECK_NOTHROW(parse_instance("2\n# men\n2\n1\n\n# women\n1 2\n2 1\n"));
}

TEST_CASE("instance format round trip", "[io]") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = random_instance(1 + seed % 12, seed);
    const auto text = format_instance(inst);
    CHECK(parse_instance(text) == inst);
    CHECK(format_instance(parse_instance(text)) == text);
  }
  CHECK(format_instance(fixture("example_5_1")) == "2\n2 1\n1 2\n2 1\n1 2\n");
}

TEST_CASE("matching text", "[io]") {
  const auto mu = parse_matching("# stable\n1 2\n2 3\n3 1\n", 3);
  CHECK(mu.wife == std::vector<int>{1, 2, 0});
  CHECK(format_matching(mu) == "1 2\n2 3\n3 1\n");
  CHECK_THROWS_AS(parse_matching("1 2\n2 2\n", 3), MalformedMatching);
  CHECK_THROWS_AS(parse_matching("1 4\n", 3), ParseError);
  CHECK_THROWS_AS(parse_matching("1\n", 3), ParseError);
  CHECK(parse_matching("", 2).pairs().empty());
}

TEST_CASE("empty trace", "[io]") {
  const PivotTrace t;
  const auto text = serialize_trace(t);
  CHECK(text.find("\"schema\": \"scarf-trace/1\"") != std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(parse_trace(text) == t);
  CHECK(serialize_trace(t, TraceFormat::csv_summary) == "iteration,separator,phase,sum_women_utility,entering,leaving\n");
}

TEST_CASE("trace json is one-based and round trips", "[io]") {
  const auto inst = MarriageInstance::make(1, {{0}}, {{0}});
  const auto res = solve(inst);
  const auto text = serialize_trace(res.trace);
  CHECK(parse_trace(text) == res.trace);
  const auto j = nlohmann::ordered_json::parse(text);
  REQUIRE(j["iterations"].size() == res.trace.iterations.size());
  CHECK(j["iterations"][0]["iteration"] == 1);
  CHECK(j["final_basis"].get<std::vector<int>>().front() == res.trace.final_basis.front() + 1);
  std::vector<std::string> keys;
  for (const auto &[key, v] : j["iterations"][0].items()) keys.push_back(key);
  CHECK(keys == std::vector<std::string>{"iteration", "B", "D", "entering", "candidates", "leaving", "ordinal",
                                         "utility", "phase", "separator", "potential"});

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto r = solve(random_instance(2 + seed % 6, seed)).trace;
    CHECK(parse_trace(serialize_trace(r)) == r);
  }
}

TEST_CASE("malformed traces", "[io]") {
  CHECK_THROWS_AS(parse_trace("{"), ParseError);
  CHECK_THROWS_AS(parse_trace(R"({"schema": "other"})"), ParseError);
  CHECK_THROWS_AS(parse_trace(R"({"schema": "scarf-trace/1"})"), ParseError);
}

TEST_CASE("csv summary of a family run", "[io]") {
  const int k = 4;
  const auto res = solve(irving_leather(k));
  const auto csv = serialize_trace(res.trace, TraceFormat::csv_summary);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "iteration,separator,phase,sum_women_utility,entering,leaving");
  int rows = 0;
  std::pair<long, long> prev{0, 0};
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() == 6);
    CHECK(std::stoi(f[0]) == rows + 1);
    const long sep = f[2] == "M" ? k + 1 : std::stol(f[1]);
    const std::pair<long, long> pot{sep, std::stol(f[3])};
    CHECK(pot > prev);
    CHECK(pot.first >= prev.first);
    prev = pot;
    ++rows;
  }
  CHECK(rows == res.iterations());
}
