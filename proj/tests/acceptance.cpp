// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "remedysim/batch.hpp"
#include "remedysim/generate.hpp"
#include "remedysim/report_io.hpp"
#include "support.hpp"

using namespace testing;

namespace {

struct Check {
  bool ok{true};
  std::ostringstream why;
  std::ostringstream note;  // coverage counts, printed either way

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (!(got == want) && ok) why << what << ": got " << got << ", want " << want;
    ok = ok && got == want;
  }
};

int failures = 0;

void report(int n, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  std::cout << (c.ok ? "PASS" : "FAIL") << "  " << std::setw(2) << n << "  " << title;
  if (!c.note.str().empty()) std::cout << "  (" << c.note.str() << ")";
  if (!c.ok) std::cout << "  [" << c.why.str() << "]";
  std::cout << std::endl;
  if (!c.ok) ++failures;
}

Money award(const DisputeRecord& r, const RemedyRegime& regime) {
  for (const auto& a : r.awards)
    if (a.regime == regime) return a.amount;
  throw std::runtime_error("no award for " + to_string(regime));
}

DisputeRecord dispute(const std::string& fixture_name, ContractId id, const std::string& breacher, bool notice = false) {
  Market m(load_scenario(fixture(fixture_name)));
  m.form_contracts(0);
  return m.dispute_for(id, AgentId(breacher), 0, notice);
}

const Account& account_of(const RunReport& r, const AgentId& a) {
  for (const auto& acc : r.accounts)
    if (acc.agent == a) return acc;
  throw std::runtime_error("no account for " + a.value);
}

// One random single-good market with a trade, plus the same market in which
// one party of contract 0 is lured away. Party damages of 0 keep the breach
// world free of transfers, so the victim's breach payoff is what it is left
// with on its own.
struct BreachPair {
  Scenario perform;
  Scenario breach;
  Contract contract;
  AgentId breacher;
  AgentId victim;
  Money victim_value{0};
};

std::optional<BreachPair> make_pair(std::mt19937_64& rng) {
  Scenario s = random_single_good(rng);
  Market m(s);
  m.form_contracts(0);
  if (m.ledger().contracts().empty()) return std::nullopt;
  BreachPair p;
  p.contract = m.ledger().at(0);
  const bool seller_breaches = rng() % 2 == 0;
  p.breacher = seller_breaches ? p.contract.seller : p.contract.buyer;
  p.victim = p.contract.counterparty(p.breacher);
  const auto& v = s.network.agent(p.victim);
  p.victim_value = seller_breaches ? v.input_valuations.at(p.contract.good) : *v.output_valuation;
  Money offer = seller_breaches ? p.contract.price + 1000 : p.contract.price - 1;
  if (offer < 0) return std::nullopt;  // nothing cheaper than a free good
  p.perform = s;
  p.breach = s;
  p.breach.regime = PartyDesigned{ConstantDamages{0}};
  p.breach.events.push_back({0, FortunateOffer{p.breacher, offer}});
  return p;
}

}  // namespace

int main() {
  report(1, "Fig. 2 clearing: P_c = 12, one trade (s5, c3)", [](Check& c) {
    auto r = clear(GoodId("g5"), fig2_book());
    c.equal(r.price.value_or(-1), 12, "price");
    c.equal(r.trades.size(), 1u, "trades");
    c.expect(!r.trades.empty() && r.trades[0] == Trade{AgentId("s5"), AgentId("c3")}, "trade pair");
    auto sim = run(load_scenario(fixture("fig2.scn")));
    c.equal(sim.ledger.contracts().size(), 1u, "simulated contracts");
    c.equal(sim.ledger.at(0).price, 12, "simulated price");
  });

  report(2, "Fig. 2 consumer breach: D_e = 1, D_o = 0 (P_o = 11), D_r = 0", [](Check& c) {
    auto r = dispute("fig2.scn", 0, "c3");
    c.equal(r.context.P_o.value_or(-1), 11, "P_o");
    c.equal(award(r, Expectation{}), 1, "D_e");
    c.equal(award(r, OpportunityCost{}), 0, "D_o");
    c.equal(award(r, Reliance{false}), 0, "D_r");
  });

  report(3, "Fig. 2 supplier breach: D_e = 3, P_o = 12, D_o = 3, D_r = 0", [](Check& c) {
    auto r = dispute("fig2.scn", 0, "s5");
    c.equal(r.context.P_o.value_or(-1), 12, "P_o");
    c.equal(award(r, Expectation{}), 3, "D_e");
    c.equal(award(r, OpportunityCost{}), 3, "D_o");
    c.equal(award(r, Reliance{false}), 0, "D_r");
  });

  report(4, "Fig. 3 producer: I_p = 26, I_p^g5 = 14, D_e = 8, D_r = 3, D'_r capped at P_c", [](Check& c) {
    auto r = dispute("fig3.scn", 0, "s5");
    c.equal(r.context.I_total, 26, "I_p");
    c.equal(r.context.I_ex, 14, "I_p^g5");
    c.expect(r.context.presumable, "p5 presumable");
    c.equal(award(r, Expectation{}), 8, "D_e");
    c.equal(award(r, Reliance{false}), 3, "D_r");
    c.equal(award(r, Reliance{true}), 3, "D'_r below the cap");

    // Richer buyers for g6 push R_p, and with it D_r, above P_c = 12.
    auto s = load_scenario(fixture("fig3.scn"));
    std::vector<AgentSpec> agents = s.network.agents();
    for (auto& a : agents) {
      if (a.id == AgentId("c2")) a.input_valuations[GoodId("g6")] = 60;
      if (a.id == AgentId("c9")) a.input_valuations[GoodId("g6")] = 58;
    }
    s.network = Network(s.network.goods(), agents);
    for (bool notice : {false, true}) {
      Market m(s);
      m.form_contracts(0);
      auto v = m.dispute_for(0, AgentId("s5"), 0, notice);
      const Money dr = award(v, Reliance{false});
      c.equal(dr, 15 - 14 + 58 - 32, "variant D_r");
      c.equal(award(v, Reliance{true}), notice ? dr : 12, notice ? "D'_r with notice" : "D'_r without notice");
    }
  });

  report(5, "Fig. 4 consumer breach: D_e = 34 - 26 = 8; non-presumable D_e = 34 - 32 = 2", [](Check& c) {
    auto r = dispute("fig3.scn", 3, "c2");
    c.equal(r.context.contract.price, 34, "P_c");
    c.expect(r.context.presumable, "presumable");
    c.equal(award(r, Expectation{}), 8, "presumable D_e");
    auto n = dispute("fig4_nonpresumable.scn", 2, "c2");
    c.expect(!n.context.presumable, "not presumable");
    c.equal(award(n, Expectation{}), 2, "non-presumable D_e");
  });

  report(6, "Substitute collapse: P_s = P_c gives 0; P_c = 15, P_s = 12 gives 3", [](Check& c) {
    for (const auto& breacher : {"c3", "s5"}) {
      auto ctx = dispute("fig2.scn", 0, breacher).context;
      ctx.P_s = ctx.contract.price;
      c.equal(expectation_damages(ctx), 0, std::string("D_e, breacher ") + breacher);
      c.equal(opportunity_damages(ctx), 0, std::string("D_o, breacher ") + breacher);
      c.equal(reliance_damages(ctx), 0, std::string("D_r, breacher ") + breacher);
    }
    auto ctx = dispute("fig2.scn", 0, "c3").context;  // seller victim
    ctx.contract.price = 15;
    ctx.P_o = 15;
    ctx.P_s = 12;
    c.equal(expectation_damages(ctx), 3, "seller-victim D_e");
    c.equal(reliance_damages(ctx), 3, "seller-victim D_r");

    // End to end: the victim re-enters the residual book and finds one.
    auto s = load_scenario(fixture("fig2.scn"));
    s.substitutes = true;
    s.events.push_back({0, FortunateOffer{AgentId("c3"), 5}});
    auto r = run(s);
    c.equal(r.breaches.size(), 1u, "breaches with substitutes");
    if (!r.disputes.empty()) {
      const auto& d = r.disputes[0];
      c.expect(d.substitute_price.has_value(), "substitute found");
      if (d.substitute_price)
        c.equal(award(d, Expectation{}), std::max<Money>(12 - *d.substitute_price, 0), "substitute D_e");
    }
  });

  report(7, "Expectation indifference on >= 200 random single-good markets, < 10 s", [](Check& c) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    int sellers = 0, buyers = 0;
    for (int tries = 0; tries < 20000 && sellers + buyers < 400; ++tries) {
      auto p = make_pair(rng);
      if (!p) continue;
      auto perform = run(p->perform);
      auto breach = run(p->breach);
      if (breach.breaches.size() != 1) {
        c.expect(false, "lured party did not breach");
        continue;
      }
      const bool seller_victim = p->victim == p->contract.seller;
      // Hand-derived expectation: the profit the victim loses.
      const Money de = seller_victim ? p->contract.price - p->victim_value : p->victim_value - p->contract.price;
      c.equal(award(breach.disputes[0], Expectation{}), de, "library D_e");
      c.equal(account_of(perform, p->victim).payoff(), account_of(breach, p->victim).payoff() + de,
              "perform payoff vs breach payoff + D_e");
      (seller_victim ? sellers : buyers)++;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.note << sellers << " seller victims, " << buyers << " buyer victims, " << std::fixed << std::setprecision(2)
           << secs << " s";
    c.expect(sellers + buyers >= 200, "too few instances");
    c.expect(sellers > 0 && buyers > 0, "both victim sides covered");
    c.expect(secs < 10.0, "too slow");
  });

  report(8, "Opportunity indifference where P_o exists", [](Check& c) {
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int tries = 0; tries < 20000 && checked < 300; ++tries) {
      auto p = make_pair(rng);
      if (!p) continue;
      Market m(p->perform);
      m.form_contracts(0);
      std::vector<Order> book(m.book(0, p->contract.good).begin(), m.book(0, p->contract.good).end());

      // Breacher-absent counterfactual: drop its orders, keep M, take the
      // (M+1)st highest remaining price.
      std::size_t M = 0;
      std::vector<Order> rest;
      std::vector<Money> prices;
      for (const auto& o : book) {
        if (o.side == Side::Sell) ++M;
        if (o.agent == p->breacher) continue;
        rest.push_back(o);
        prices.push_back(o.price);
      }
      const Side breacher_side = p->breacher == p->contract.seller ? Side::Sell : Side::Buy;
      const bool side_left = std::any_of(rest.begin(), rest.end(), [&](auto& o) { return o.side == breacher_side; });
      if (prices.size() < M + 1 || !side_left) continue;
      std::sort(prices.rbegin(), prices.rend());
      const Money po = prices[M];

      // The victim takes P_o as the market price and trades there if that
      // does not lose it money. Matching is not re-run: with M held, P_o can
      // sit where no remaining counterparty would trade (Fig. 2 without s5
      // has no ask at or below 12), yet it still prices the opportunity.
      const bool seller_victim = p->victim == p->contract.seller;
      const Money counterfactual = std::max<Money>(seller_victim ? po - p->victim_value : p->victim_value - po, 0);

      auto breach = run(p->breach);
      if (breach.breaches.size() != 1) {
        c.expect(false, "lured party did not breach");
        continue;
      }
      const auto& d = breach.disputes[0];
      c.equal(d.context.P_o.value_or(-1), po, "P_o");
      c.equal(counterfactual, account_of(breach, p->victim).payoff() + award(d, OpportunityCost{}),
              "counterfactual payoff vs breach payoff + D_o");
      ++checked;
    }
    c.note << checked << " instances";
    c.expect(checked >= 200, "too few instances with P_o");
  });

  report(9, "Welfare identity and zero-sum damages on >= 100 random multi-level scenarios, every regime", [](Check& c) {
    std::mt19937_64 rng(31337);
    std::vector<RemedyRegime> regimes{Expectation{}, OpportunityCost{}, Reliance{false}, Reliance{true},
                                      PartyDesigned{FractionOfPrice{Rational(1, 2)}},
                                      PartyDesigned{FractionOfExpectation{Rational(3, 4)}},
                                      PartyDesigned{ConstantDamages{5}}};
    std::vector<Scenario> batch;
    for (int i = 0; i < 120; ++i) {
      auto base = random_multilevel(rng);
      for (const auto& r : regimes) {
        Scenario s = base;
        s.regime = r;
        batch.push_back(std::move(s));
      }
    }
    int breaches = 0;
    for (const auto& r : run_batch(batch)) {
      Money payoffs = 0, paid = 0, received = 0;
      for (const auto& a : r.accounts) {
        payoffs += a.payoff();
        paid += a.damages_paid;
        received += a.damages_received;
      }
      c.equal(payoffs, r.total_welfare(), "sum of payoffs vs welfare");
      c.equal(paid, received, "damages paid vs received");
      breaches += static_cast<int>(r.breaches.size());
    }
    c.note << batch.size() << " runs, " << breaches << " breaches";
    c.expect(breaches > 0, "no breach anywhere; the identity was never stressed");
  });

  report(10, "Determinism: equal seeds give byte-identical exports", [](Check& c) {
    std::vector<Scenario> corpus;
    for (const auto& name : {"fig2.scn", "fig3.scn", "fig4_nonpresumable.scn", "chain.scn", "perturbed.scn"})
      corpus.push_back(load_scenario(fixture(name)));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) corpus.push_back(random_multilevel(rng));
    auto parallel = run_batch(corpus);
    c.note << corpus.size() << " scenarios";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto a = export_jsonl(run(corpus[i]));
      c.expect(a == export_jsonl(run(corpus[i])), "two serial runs differ");
      c.expect(a == export_jsonl(parallel[i]), "parallel run differs");
    }
  });

  report(11, "Information sharing: party regime invariant; NoShare breaches <= Broadcast when D_e <= P_c", [](Check& c) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
      Scenario s = random_multilevel(rng);
      s.regime = PartyDesigned{FractionOfPrice{Rational(1, 3)}};
      auto variants = sweep_variants(s, SweepAxis::Info);
      auto first = export_jsonl(run(variants[0].scenario));
      for (const auto& v : variants) c.expect(export_jsonl(run(v.scenario)) == first, "party report depends on info");
    }

    int scenarios = 0, blind_total = 0, open_total = 0;
    for (int tries = 0; tries < 20000 && scenarios < 300; ++tries) {
      Scenario s = random_single_good(rng);
      s.default_policy = AgentPolicy{};  // beta = 1, propensity 0, sharing
      s.regime = Expectation{};
      for (const auto& a : s.network.agents())
        if (rng() % 2) s.events.push_back({0, FortunateOffer{a.id, static_cast<Money>(rng() % 130)}});
      Market m(s);
      m.form_contracts(0);
      if (m.ledger().contracts().empty()) continue;
      bool bounded = true;
      for (const auto& ct : m.ledger().contracts())
        for (const auto& who : {ct.seller, ct.buyer})
          bounded = bounded && award(m.dispute_for(ct.id, who, 0, false), Expectation{}) <= ct.price;
      if (!bounded) continue;
      Scenario blind = s, open = s;
      blind.info = InfoSharingLevel::NoShare;
      open.info = InfoSharingLevel::Broadcast;
      const auto nb = run(blind).breaches.size();
      const auto no = run(open).breaches.size();
      c.expect(nb <= no, "NoShare breached more than Broadcast");
      blind_total += static_cast<int>(nb);
      open_total += static_cast<int>(no);
      ++scenarios;
    }
    c.note << scenarios << " bounded scenarios, breaches " << blind_total << " blind vs " << open_total << " shared";
    c.expect(scenarios >= 100, "too few bounded scenarios");
    c.expect(open_total > 0, "no breaches to compare");
    c.expect(blind_total <= open_total, "aggregate frequency");
  });

  return failures == 0 ? 0 : 1;
}
