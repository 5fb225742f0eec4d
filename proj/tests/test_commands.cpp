#include "doctest.h"
#include "orbdiam/commands.hpp"

using namespace orbdiam;
using json = nlohmann::ordered_json;

namespace {

RunConfig cfg(json j) { return config_from_json(j); }

json strip_timing(json j) {
  if (j.is_object()) {
    j.erase("runtime_ms");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

}  // namespace

TEST_CASE("class strings parse and round trip") {
  for (const char* s : {"any", "ts", "nsp", "nd", "nd+", "nd-", "nd(+)", "nd(-)", "nd[square]", "nd[nonsquare]"}) {
    auto c = parse_class(s);
    CHECK(parse_class(c.str()).str() == c.str());
  }
  CHECK(parse_class("nd+").subtype == SubType::plus);
  CHECK(parse_class("nd(-)").subtype == SubType::minus);
  CHECK(parse_class("nd[nonsquare]").disc == 1);
  CHECK_THROWS_AS(parse_class("nd[blue]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_class("nd(+"), std::invalid_argument);
}

TEST_CASE("run configs reject unknown keys and round trip") {
  CHECK_THROWS_AS(cfg({{"n", 4}, {"q", 2}, {"colour", "red"}}), std::invalid_argument);
  CHECK_THROWS(cfg({{"q", 2}}));
  auto c = cfg({{"command", "verify"}, {"target", "thm1"}, {"family", "sp"}, {"n", 6}, {"q", 3}, {"t", 2}, {"class", "nd"},
                {"seed", 7}, {"l", 1}});
  auto back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK(back.seed == 7);
  CHECK(back.l == 1);
}

TEST_CASE("exit codes follow the error kind") {
  auto r = run_config(cfg({{"command", "verify"}, {"target", "lemma-pslb"}, {"family", "sl"}, {"n", 4}, {"q", 2}, {"t", 2}}));
  CHECK(r.exit_code == exit_hypothesis);
  CHECK(r.record["error"]["kind"] == "hypothesis");

  r = run_config(cfg({{"command", "verify"}, {"target", "no-such-lemma"}, {"n", 4}, {"q", 2}}));
  CHECK(r.exit_code == exit_hypothesis);

  r = run_config(cfg({{"family", "sp"}, {"n", 4}, {"q", 3}, {"t", 1}}));
  CHECK(r.exit_code == exit_hypothesis);

  r = run_config(cfg({{"family", "sl"}, {"n", 5}, {"q", 2}, {"t", 2}, {"budget", 10}}));
  CHECK(r.exit_code == exit_budget);
  CHECK(r.record["error"]["needed"].get<std::uint64_t>() > 10);

  r = run_config(cfg({{"command", "probe"}, {"target", "o2minus_q3mod4"}, {"family", "omega"}, {"n", 7}, {"q", 5}, {"eps", "o"}}));
  CHECK(r.exit_code == exit_hypothesis);
}

TEST_CASE("verify thm2-converse on GU5(2) points") {
  auto r = run_config(cfg({{"command", "verify"}, {"target", "thm2-converse"}, {"family", "gu"}, {"n", 5}, {"q", 2}, {"t", 1},
                           {"class", "nd"}}));
  REQUIRE(r.exit_code == exit_ok);
  CHECK(r.record["certificate"]["result"]["X"] == 176);
  CHECK(r.record["certificate"]["result"]["diam"] == 2);
}

TEST_CASE("verify case-d and lemma-seged2") {
  auto r = run_config(cfg({{"command", "verify"}, {"target", "case-d"}, {"case", "d"}, {"family", "sp"}, {"n", 6}, {"q", 2}, {"eps", "-"}}));
  REQUIRE(r.exit_code == exit_ok);
  CHECK(r.record["certificate"]["result"]["X"] == 28);
  r = run_config(cfg({{"command", "verify"}, {"target", "lemma-seged2"}, {"family", "sl"}, {"n", 5}, {"q", 2}, {"t", 2}}));
  CHECK(r.exit_code == exit_ok);
}

TEST_CASE("sweep keeps going past a bad row and is deterministic") {
  std::vector<RunConfig> grid = {
      cfg({{"family", "sl"}, {"n", 4}, {"q", 3}, {"t", 1}}),
      cfg({{"command", "verify"}, {"target", "lemma-pslb"}, {"family", "sl"}, {"n", 4}, {"q", 2}, {"t", 2}}),
      cfg({{"case", "d"}, {"family", "sp"}, {"n", 4}, {"q", 2}, {"eps", "+"}}),
  };
  auto a = run_sweep(grid, 3);
  auto b = run_sweep(grid, 1);
  REQUIRE(a.size() == 3);
  CHECK(a[0].exit_code == exit_ok);
  CHECK(a[1].exit_code == exit_hypothesis);
  CHECK(a[2].exit_code == exit_ok);
  CHECK(a[2].record["diam"] == 1);
  CHECK(sweep_exit_code(a) == exit_hypothesis);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(strip_timing(a[i].record).dump() == strip_timing(b[i].record).dump());
}

TEST_CASE("csv projection flattens nested records") {
  std::vector<json> rows = {{{"a", 1}, {"b", {{"c", "x,y"}}}}, {{"a", 2}, {"d", {1, 2}}}};
  CHECK(csv_projection(rows) == "a,b.c,d\n1,\"x,y\",\n2,,\"[1,2]\"\n");
}

TEST_CASE("thm1 rejects nondegenerate n/2-spaces whose perp lies in X") {
  auto r = run_config(cfg({{"command", "verify"}, {"target", "thm1"}, {"family", "sp"}, {"n", 4}, {"q", 2}, {"t", 2}, {"class", "nd"}}));
  CHECK(r.exit_code == exit_hypothesis);
  CHECK(r.record["error"]["message"].get<std::string>().find("block") != std::string::npos);
}
