#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "spatialdom/dataset.hpp"
#include "test_support.hpp"

using namespace spatialdom;
using Catch::Matchers::ContainsSubstring;
using testsupport::random_rect;

namespace {

std::vector<Entry> parse(const std::string& text) {
  std::istringstream in(text);
  return read_jsonl(in);
}

std::string serialize(const std::vector<Entry>& entries) {
  std::ostringstream out;
  write_jsonl(entries, out);
  return out.str();
}

}  // namespace

TEST_CASE("reads a minimal record") {
  const auto entries = parse(R"({"id":1,"min":[0,2],"max":[0,2]})" "\n");
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].id == 1);
  REQUIRE(entries[0].mbr.dim() == 2);
  CHECK(entries[0].mbr[0] == Interval(0, 0));
  CHECK(entries[0].mbr[1] == Interval(2, 2));
  CHECK(entries[0].mbr.is_point());
}

TEST_CASE("integer coordinates widen to doubles") {
  const auto entries = parse(R"({"id":2,"min":[1,-3],"max":[2.5,4]})" "\n");
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].mbr[0] == Interval(1.0, 2.5));
  CHECK(entries[0].mbr[1] == Interval(-3.0, 4.0));
}

TEST_CASE("preserves file order and accepts a missing trailing newline") {
  const auto entries = parse(
      "{\"id\":5,\"min\":[0],\"max\":[1]}\n{\"id\":3,\"min\":[2],\"max\":[2]}");
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].id == 5);
  CHECK(entries[1].id == 3);
}

TEST_CASE("empty input gives an empty dataset") {
  CHECK(parse("").empty());
  CHECK(serialize({}).empty());
}

TEST_CASE("malformed JSON reports the line number") {
  try {
    parse("{\"id\":1,\"min\":[0],\"max\":[1]}\nnot json\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK_THAT(e.what(), ContainsSubstring("line 2"));
  }
}

TEST_CASE("non-object lines are rejected") {
  CHECK_THROWS_AS(parse("[1,2,3]\n"), ParseError);
}

TEST_CASE("inverted bounds name the offending id and dimension") {
  try {
    parse(R"({"id":9,"min":[0,5],"max":[1,4]})" "\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.line == 1);
    CHECK_THAT(e.what(), ContainsSubstring("id 9"));
    CHECK_THAT(e.what(), ContainsSubstring("dimension 1"));
  }
}

TEST_CASE("structural violations are rejected") {
  SECTION("missing id") {
    CHECK_THROWS_AS(parse(R"({"min":[0],"max":[1]})" "\n"), ValidationError);
  }
  SECTION("non-integer id") {
    CHECK_THROWS_AS(parse(R"({"id":1.5,"min":[0],"max":[1]})" "\n"),
                    ValidationError);
  }
  SECTION("missing max") {
    CHECK_THROWS_AS(parse(R"({"id":1,"min":[0]})" "\n"), ValidationError);
  }
  SECTION("min not an array") {
    CHECK_THROWS_AS(parse(R"({"id":1,"min":0,"max":[1]})" "\n"),
                    ValidationError);
  }
  SECTION("empty coordinate arrays") {
    CHECK_THROWS_AS(parse(R"({"id":1,"min":[],"max":[]})" "\n"),
                    ValidationError);
  }
  SECTION("non-numeric coordinate") {
    CHECK_THROWS_AS(parse(R"({"id":1,"min":["a"],"max":[1]})" "\n"),
                    ValidationError);
  }
  SECTION("unexpected key") {
    CHECK_THROWS_AS(parse(R"({"id":1,"min":[0],"max":[1],"tag":"x"})" "\n"),
                    ValidationError);
  }
  SECTION("min and max lengths differ") {
    CHECK_THROWS_AS(parse(R"({"id":1,"min":[0,0],"max":[1]})" "\n"),
                    ValidationError);
  }
}

TEST_CASE("dimensionality must be consistent across lines") {
  try {
    parse(
        "{\"id\":1,\"min\":[0],\"max\":[1]}\n"
        "{\"id\":2,\"min\":[0,0],\"max\":[1,1]}\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.line == 2);
    CHECK_THAT(e.what(), ContainsSubstring("dimensionality 2 differs from 1"));
  }
}

TEST_CASE("duplicate ids are rejected") {
  try {
    parse(
        "{\"id\":1,\"min\":[0],\"max\":[1]}\n"
        "{\"id\":1,\"min\":[2],\"max\":[3]}\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.line == 2);
    CHECK_THAT(e.what(), ContainsSubstring("duplicate id 1"));
  }
}

TEST_CASE("write then read reproduces the entries") {
  Xoshiro256PlusPlus rng(20);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + rng.next_below(50);
    const std::size_t d = 1 + rng.next_below(6);
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < n; ++i) {
      entries.push_back({static_cast<std::int64_t>(i * 3 + 1),
                         random_rect(rng, d, -100, 100, 5)});
    }
    REQUIRE(parse(serialize(entries)) == entries);
  }
}

TEST_CASE("canonical files survive a read-write cycle byte for byte") {
  const std::string canonical =
      "{\"id\":1,\"min\":[0.0,2.0],\"max\":[0.0,2.0]}\n"
      "{\"id\":2,\"min\":[-1.5,0.25],\"max\":[3.0,0.75]}\n";
  CHECK(serialize(parse(canonical)) == canonical);
}

TEST_CASE("writer emits keys in canonical order") {
  const std::vector<Entry> one = {{4, Rect{Interval(0, 1)}}};
  CHECK(serialize(one) == "{\"id\":4,\"min\":[0.0],\"max\":[1.0]}\n");
}

TEST_CASE("generator is reproducible and respects its bounds") {
  GeneratorConfig config;
  config.n = 200;
  config.d = 3;
  config.extent_lo = -2.0;
  config.extent_hi = 6.0;
  config.max_side = 0.5;
  config.seed = 99;

  const auto first = generate(config);
  const auto again = generate(config);
  REQUIRE(first == again);
  REQUIRE(first.size() == 200);

  const Rect domain{Interval(-2, 6), Interval(-2, 6), Interval(-2, 6)};
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].id == static_cast<std::int64_t>(i));
    CHECK(first[i].mbr.dim() == 3);
    CHECK(domain.contains(first[i].mbr));
    for (std::size_t dim = 0; dim < 3; ++dim) {
      CHECK(first[i].mbr[dim].length() <= 0.5);
    }
  }

  config.seed = 100;
  CHECK(generate(config) != first);
}

TEST_CASE("zero max_side generates points") {
  GeneratorConfig config;
  config.n = 50;
  config.d = 2;
  config.seed = 7;
  for (const Entry& e : generate(config)) {
    CHECK(e.mbr.is_point());
  }
}

TEST_CASE("clustered mode stays within the domain and reproduces") {
  GeneratorConfig config;
  config.n = 300;
  config.d = 2;
  config.max_side = 0.02;
  config.distribution = Distribution::Clustered;
  config.clusters = 4;
  config.seed = 13;

  const auto data = generate(config);
  REQUIRE(data == generate(config));
  const Rect domain{Interval(0, 1), Interval(0, 1)};
  for (const Entry& e : data) {
    CHECK(domain.contains(e.mbr));
  }
}

TEST_CASE("invalid generator configs are rejected") {
  GeneratorConfig config;
  config.n = 10;
  config.d = 2;

  GeneratorConfig bad = config;
  bad.n = 0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);

  bad = config;
  bad.d = 0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);

  bad = config;
  bad.extent_lo = 1.0;
  bad.extent_hi = 1.0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);

  bad = config;
  bad.max_side = -0.1;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);

  bad = config;
  bad.max_side = 2.0;  // wider than the unit domain
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);

  bad = config;
  bad.distribution = Distribution::Clustered;
  bad.clusters = 0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}

TEST_CASE("distribution names") {
  CHECK(to_string(Distribution::Uniform) == std::string("uniform"));
  CHECK(to_string(Distribution::Clustered) == std::string("clustered"));
}
