#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sgen2/error.hpp"
#include "sgen2/pipeline.hpp"

using namespace sgen2;

namespace {

json gaussian(json S) { return {{"field", {{"poly", {1, 0, 1}}}}, {"S", std::move(S)}}; }

Errc config_error(const json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("configuration was accepted");
  return Errc::ConfigInvalid;
}

}  // namespace

TEST_CASE("rationals round-trip through JSON") {
  for (const char* s : {"0", "-3", "7/4", "-22/7"}) CHECK(to_json(rat_from_json(json(s))) == json(s));
  CHECK(rat_from_json(json(5)) == Rat(5));
  CHECK(to_json(Rat(6, 4)) == json("3/2"));
}

TEST_CASE("configuration errors") {
  CHECK(config_error(json::object()) == Errc::ConfigInvalid);
  CHECK(config_error(gaussian({{{"p", 4}}})) == Errc::ConfigInvalid);
  CHECK(config_error(gaussian({{{"p", 5}, {"select", "some"}}})) == Errc::ConfigInvalid);
  auto j = gaussian({{{"p", 5}}});
  j["h"] = 0;
  CHECK(config_error(j) == Errc::ConfigInvalid);
  j["h"] = 1;
  j["N"] = "sometimes";
  CHECK(config_error(j) == Errc::ConfigInvalid);
  j["N"] = 3;
  j["colour"] = "blue";
  CHECK(config_error(j) == Errc::ConfigInvalid);
  j.erase("colour");
  CHECK(parse_config(j).N == 3);
}

TEST_CASE("prime selections") {
  auto K = create_field({1, 0, 1});
  auto all = resolve_primes(K, parse_config(gaussian({{{"p", 5}}})).S);
  CHECK(all.finite.size() == 2);
  auto first = resolve_primes(K, parse_config(gaussian({{{"p", 5}, {"select", {{"index", 0}}}}})).S);
  REQUIRE(first.finite.size() == 1);
  CHECK(first.finite[0] == all.finite[0]);
  auto by_gen = resolve_primes(K, parse_config(gaussian({{{"p", 5}, {"select", {{"generator", {2, -1}}}}}})).S);
  REQUIRE(by_gen.finite.size() == 1);
  CHECK(valuation(K->element({2, -1}), by_gen.finite[0]) == 1);
  CHECK_THROWS_AS(resolve_primes(K, parse_config(gaussian({{{"p", 5}, {"select", {{"index", 2}}}}})).S), Error);
  CHECK_THROWS_AS(resolve_primes(K, parse_config(gaussian({{{"p", 5}}, {{"p", 5}}})).S), Error);
  CHECK_THROWS_AS(resolve_primes(K, parse_config(gaussian({{{"p", 5}, {"select", {{"generator", {1, 1}}}}}})).S), Error);
}

TEST_CASE("exit codes") {
  CHECK(run(Command::Analyze, parse_config(gaussian(json::array()))).exit_code == 2);
  CHECK(run(Command::Analyze, parse_config({{"field", {{"poly", {2, 0, 1}}}}, {"S", {{{"p", 3}}}}})).exit_code == 0);
  CHECK(run(Command::Analyze, parse_config({{"field", {{"poly", {-1, 0, 1}}}}, {"S", {{{"p", 3}}}}})).exit_code == 1);
  CHECK(run(Command::Analyze, parse_config({{"field", {{"poly", {1, 0, 0, 1}}}}, {"S", {{{"p", 3}}}}})).exit_code == 1);
  auto r = run(Command::Analyze, parse_config(gaussian(json::array())));
  CHECK(r.report["error"]["code"] == "CardinalityTooSmall");
  CHECK(exit_code_for(Errc::ConfigInvalid) == 1);
  CHECK(exit_code_for(Errc::HypothesisFails) == 2);
  CHECK(exit_code_for(Errc::IdentityFailed) == 3);
}

TEST_CASE("worked examples") {
  auto r = run(Command::Examples, {});
  CHECK(r.exit_code == 0);
  REQUIRE(r.report["examples"].size() == 2);
  for (const auto& e : r.report["examples"]) CHECK(e["match"] == true);
  const auto& a1 = r.report["examples"][0]["report"]["analysis"];
  CHECK(a1["case"] == "2");
  CHECK(a1["S"]["card"] == 2);
  CHECK(a1["split_prime_check"] == true);
  const auto& a2 = r.report["examples"][1]["report"]["analysis"];
  CHECK(a2["case"] == "1");
  CHECK(a2["s_units"]["rank"] == 2);
  CHECK(a2["rank_table"][0]["intersection_rank"] == 1);
}

TEST_CASE("generated triples and reports") {
  auto c = parse_config({{"field", {{"poly", {0, 1}}}}, {"S", {{{"p", 2}}}}});
  auto g = run(Command::Generate, c);
  CHECK(g.exit_code == 0);
  const auto& t = g.report["triple"];
  CHECK(t["case"] == "1");
  CHECK(t["gamma"] == json::parse(R"([[["1/2"], ["0"]], [["0"], ["2"]]])"));
  CHECK(t["psi1"] == json::parse(R"([[["1"], ["0"]], [["1"], ["1"]]])"));
  CHECK(t["psi2"] == json::parse(R"([[["1"], ["1"]], [["0"], ["1"]]])"));
  CHECK(g.report["alpha"]["index_table"].size() == 3);

  auto v = run(Command::Verify, c);
  CHECK(v.exit_code == 0);
  const auto& ver = v.report["verification"];
  CHECK(ver["overall"] == true);
  CHECK(ver["modp"].size() == 10);
  CHECK(ver["modp"][0]["reached"] == 24);
  CHECK(ver["modp"][1]["reached"] == 120);

  // Identical configurations give byte-identical reports, serial or parallel.
  auto again = run(Command::Verify, c, {false, false});
  CHECK(again.report.dump() == v.report.dump());

  auto e1 = parse_config({{"field", {{"poly", {1, 0, 1}}}}, {"S", {{{"p", 2}}}}, {"N", 2}});
  auto r1 = run(Command::Generate, e1);
  CHECK(r1.report["triple"]["case"] == "2");
  CHECK(r1.report["triple"]["psi2"] == json::parse(R"([[["1", "0"], ["0", "1"]], [["0", "0"], ["1", "0"]]])"));
  CHECK(r1.report["alpha"]["field"] == "Q");
}

TEST_CASE("timings only on request") {
  auto c = parse_config(gaussian({{{"p", 5}}}));
  CHECK_FALSE(run(Command::Analyze, c).report.contains("timings_ms"));
  CHECK(run(Command::Analyze, c, {true, true}).report.contains("timings_ms"));
}
