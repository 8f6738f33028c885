#include <doctest.h>

#include <random>

#include "remedysim/generate.hpp"
#include "remedysim/report_io.hpp"
#include "support.hpp"

using namespace testing;

namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("fixtures parse and validate") {
  for (const auto& name : {"fig2.scn", "fig3.scn", "fig4_nonpresumable.scn", "chain.scn", "perturbed.scn"}) {
    CAPTURE(name);
    auto s = load_scenario(fixture(name));
    CHECK_NOTHROW(validate_scenario(s));
  }
}

TEST_CASE("a full scenario parses") {
  auto s = parse_scenario(R"(
[goods]
g h
[agents]
s out g=4   # trailing comment
p in g=9 out h=12
c in h=30
[policies]
p reliance=low notice=yes
default propensity=1/4 shares=no beta=1/2
[market]
regime party fraction-expectation 1/2
odr party
info neighbor
rounds 3
maturity_lag 1
substitutes on
seed 42
[contract_regimes]
0 reliance-capped
[events]
1 fortunate p 50
2 unfortunate g 3
)");
  CHECK(s.network.agents().size() == 3);
  CHECK(s.default_policy.breach_propensity == Rational(1, 4));
  CHECK(!s.default_policy.shares_info);
  const auto& p = s.policy_for(AgentId("p"));
  CHECK(p.reliance == RelianceLevel::Low);
  CHECK(p.gives_notice);
  CHECK(p.risk_attitude == Rational(1, 2));  // refined from the default
  CHECK(s.regime == RemedyRegime{PartyDesigned{FractionOfExpectation{Rational(1, 2)}}});
  CHECK(s.odr_mode == OdrMode::PartySelected);
  CHECK(s.info == InfoSharingLevel::Neighbor);
  CHECK(s.rounds == 3);
  CHECK(s.maturity_lag == 1);
  CHECK(s.substitutes);
  CHECK(s.seed == 42);
  CHECK(s.regime_for(0) == RemedyRegime{Reliance{true}});
  REQUIRE(s.events.size() == 2);
  CHECK(s.events[1] == Perturbation{2, UnfortunateShock{GoodId("g"), 3}});
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("[goods]\ng\n[bogus]\n") == 3);
  CHECK(parse_error_line("[goods]\ng\n[market]\ncolour blue\n") == 4);
  CHECK(parse_error_line("[agents]\ns out g=x\n") == 2);
  CHECK(parse_error_line("[policies]\ndefault beta=1/0\n") == 2);
  CHECK(parse_error_line("goods g\n") == 1);
  CHECK(parse_error_line("[events]\n0 lucky s 3\n") == 2);
  CHECK(parse_error_line("[market]\nregime party\n") == 2);
}

TEST_CASE("render then parse is the identity") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    auto s = random_multilevel(rng);
    if (i % 3 == 0) s.regime = PartyDesigned{ConstantDamages{static_cast<Money>(i)}};
    if (i % 4 == 0) s.party_spec = FractionOfPrice{Rational(1, 3)};
    if (i % 5 == 0) s.contract_regimes[1] = OpportunityCost{};
    s.odr_mode = static_cast<OdrMode>(i % 3);
    CHECK(parse_scenario(render_scenario(s)) == s);
  }
  for (const auto& name : {"fig2.scn", "fig3.scn", "chain.scn"}) {
    auto s = load_scenario(fixture(name));
    CHECK(parse_scenario(render_scenario(s)) == s);
  }
}

TEST_CASE("dispute records survive JSON") {
  auto s = load_scenario(fixture("fig3.scn"));
  s.party_spec = FractionOfPrice{Rational(1, 2)};
  Market m(s);
  m.form_contracts(0);
  for (const auto& c : m.ledger().contracts())
    for (const auto& who : {c.seller, c.buyer}) {
      auto record = m.dispute_for(c.id, who, 0, true);
      auto back = dispute_from_json(json::parse(to_json(record).dump()));
      CHECK(back == record);
      CHECK(verify_record(back));
    }
  CHECK_THROWS_AS(dispute_from_json(json::parse("{}")), std::invalid_argument);
}

TEST_CASE("the machine export is one sorted-key object per line") {
  auto r = run(load_scenario(fixture("chain.scn")));
  auto text = export_jsonl(r);
  std::istringstream in(text);
  std::string line;
  int lines = 0;
  std::string last_kind;
  while (std::getline(in, line)) {
    auto j = json::parse(line);
    CHECK(j.is_object());
    CHECK(j.contains("record"));
    last_kind = j["record"];
    ++lines;
  }
  CHECK(last_kind == "summary");
  CHECK(lines > 5);
}
