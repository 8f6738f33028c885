#include "remedysim/generate.hpp"

#include <algorithm>

namespace remedysim {

namespace {

Money uniform(std::mt19937_64& rng, Money lo, Money hi) { return std::uniform_int_distribution<Money>(lo, hi)(rng); }

bool coin(std::mt19937_64& rng) { return uniform(rng, 0, 1) == 1; }

AgentPolicy random_policy(std::mt19937_64& rng) {
  AgentPolicy p;
  p.reliance = coin(rng) ? RelianceLevel::High : RelianceLevel::Low;
  p.breach_propensity = Rational(uniform(rng, 0, 2), 4);
  p.shares_info = coin(rng);
  p.risk_attitude = Rational(uniform(rng, 0, 4), 4);
  p.gives_notice = coin(rng);
  return p;
}

}  // namespace

Scenario random_single_good(std::mt19937_64& rng) {
  const GoodId g("g");
  const auto n = uniform(rng, 2, 5);
  const auto sellers = uniform(rng, 1, n - 1);
  std::vector<AgentSpec> agents;
  for (Money i = 0; i < n; ++i) {
    AgentSpec a;
    const Money v = uniform(rng, 0, 100);
    if (i < sellers) {
      a.id = AgentId("s" + std::to_string(i));
      a.output = g;
      a.output_valuation = v;
    } else {
      a.id = AgentId("c" + std::to_string(i));
      a.inputs = {g};
      a.input_valuations[g] = v;
    }
    agents.push_back(std::move(a));
  }
  Scenario s;
  s.network = Network({g}, std::move(agents));
  return s;
}

Scenario random_multilevel(std::mt19937_64& rng) {
  const int levels = static_cast<int>(uniform(rng, 2, 3));
  std::vector<std::vector<GoodId>> by_level(levels);
  std::vector<GoodId> goods;
  for (int l = 0; l < levels; ++l) {
    const auto count = uniform(rng, 1, 2);
    for (Money k = 0; k < count; ++k) {
      GoodId g("g" + std::to_string(l) + std::to_string(k));
      by_level[l].push_back(g);
      goods.push_back(g);
    }
  }

  std::vector<AgentSpec> agents;
  int next = 0;
  auto fresh = [&](const char* prefix) { return AgentId(prefix + std::to_string(next++)); };

  for (const auto& g : by_level[0]) {
    const auto count = uniform(rng, 1, 3);
    for (Money k = 0; k < count; ++k) {
      AgentSpec a;
      a.id = fresh("s");
      a.output = g;
      a.output_valuation = uniform(rng, 0, 30);
      agents.push_back(std::move(a));
    }
  }

  for (int l = 1; l < levels; ++l) {
    std::vector<GoodId> earlier;
    for (int e = 0; e < l; ++e) earlier.insert(earlier.end(), by_level[e].begin(), by_level[e].end());
    for (const auto& g : by_level[l]) {
      const auto count = uniform(rng, 1, 2);
      for (Money k = 0; k < count; ++k) {
        AgentSpec a;
        a.id = fresh("p");
        std::vector<GoodId> pool = earlier;
        std::shuffle(pool.begin(), pool.end(), rng);
        const auto inputs = uniform(rng, 1, static_cast<Money>(std::min<std::size_t>(pool.size(), 3)));
        Money spend = 0;
        for (Money i = 0; i < inputs; ++i) {
          const Money v = uniform(rng, 5, 40);
          a.inputs.push_back(pool[static_cast<std::size_t>(i)]);
          a.input_valuations[pool[static_cast<std::size_t>(i)]] = v;
          spend += v;
        }
        std::sort(a.inputs.begin(), a.inputs.end());
        a.output = g;
        a.output_valuation = spend + uniform(rng, 0, 30);
        agents.push_back(std::move(a));
      }
    }
  }

  for (int l = 1; l < levels; ++l) {
    for (const auto& g : by_level[l]) {
      const Money lo = l == levels - 1 ? 1 : 0;
      const auto count = uniform(rng, lo, 2);
      for (Money k = 0; k < count; ++k) {
        AgentSpec a;
        a.id = fresh("c");
        a.inputs = {g};
        a.input_valuations[g] = uniform(rng, 20, 150);
        agents.push_back(std::move(a));
      }
    }
  }

  Scenario s;
  s.network = Network(goods, agents);
  s.default_policy = random_policy(rng);
  for (const auto& a : agents)
    if (coin(rng)) s.policies[a.id] = random_policy(rng);
  s.info = static_cast<InfoSharingLevel>(uniform(rng, 0, 2));
  s.rounds = static_cast<Round>(uniform(rng, 1, 3));
  s.maturity_lag = static_cast<Round>(uniform(rng, 0, 1));
  s.substitutes = coin(rng);
  s.seed = rng();

  const auto events = uniform(rng, 1, 4);
  for (Money e = 0; e < events; ++e) {
    Perturbation p;
    p.time = static_cast<Round>(uniform(rng, 0, s.rounds - 1));
    if (coin(rng)) {
      const auto& a = agents[static_cast<std::size_t>(uniform(rng, 0, static_cast<Money>(agents.size()) - 1))];
      p.kind = FortunateOffer{a.id, uniform(rng, 0, 200)};
    } else {
      const auto& g = by_level[0][static_cast<std::size_t>(uniform(rng, 0, static_cast<Money>(by_level[0].size()) - 1))];
      p.kind = UnfortunateShock{g, uniform(rng, 1, 60)};
    }
    s.events.push_back(std::move(p));
  }
  return s;
}

}  // namespace remedysim
