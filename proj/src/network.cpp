#include "remedysim/network.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace remedysim {

std::string_view to_string(Role r) noexcept {
  switch (r) {
    case Role::Supplier: return "supplier";
    case Role::Producer: return "producer";
    case Role::Consumer: return "consumer";
  }
  return "?";
}

Role derive_role(const AgentSpec& a) noexcept {
  if (a.inputs.empty()) return Role::Supplier;
  if (!a.output) return Role::Consumer;
  return Role::Producer;
}

Network::Network(std::vector<GoodId> goods, std::vector<AgentSpec> agents)
    : goods_(std::move(goods)), agents_(std::move(agents)) {
  for (std::size_t i = 0; i < agents_.size(); ++i) agent_index_.emplace(agents_[i].id, i);
}

bool Network::has_good(const GoodId& g) const {
  return std::find(goods_.begin(), goods_.end(), g) != goods_.end();
}

const AgentSpec* Network::find_agent(const AgentId& id) const {
  auto it = agent_index_.find(id);
  return it == agent_index_.end() ? nullptr : &agents_[it->second];
}

const AgentSpec& Network::agent(const AgentId& id) const {
  if (const auto* a = find_agent(id)) return *a;
  throw std::out_of_range("unknown agent '" + id.value + "'");
}

Role role_of(const Network& net, const AgentId& agent) { return derive_role(net.agent(agent)); }

namespace {

struct GoodGraph {
  std::map<GoodId, std::set<GoodId>> succ;
  std::map<GoodId, int> indegree;
};

GoodGraph build_good_graph(const Network& net) {
  GoodGraph g;
  for (const auto& good : net.goods()) g.indegree.emplace(good, 0);
  for (const auto& a : net.agents()) {
    if (!a.output || !g.indegree.contains(*a.output)) continue;
    for (const auto& in : a.inputs) {
      if (!g.indegree.contains(in)) continue;
      if (g.succ[in].insert(*a.output).second) ++g.indegree[*a.output];
    }
  }
  return g;
}

// Kahn's algorithm with a min-heap; returns goods that could be ordered.
std::vector<GoodId> kahn(GoodGraph g) {
  std::priority_queue<GoodId, std::vector<GoodId>, std::greater<>> ready;
  for (const auto& [good, deg] : g.indegree)
    if (deg == 0) ready.push(good);
  std::vector<GoodId> order;
  while (!ready.empty()) {
    GoodId next = ready.top();
    ready.pop();
    order.push_back(next);
    for (const auto& s : g.succ[next])
      if (--g.indegree[s] == 0) ready.push(s);
  }
  return order;
}

}  // namespace

ValidationVerdict validate_network(const Network& net) {
  ValidationVerdict verdict;
  auto flag = [&](std::string subject, std::string rule, std::string detail) {
    verdict.violations.push_back({std::move(subject), std::move(rule), std::move(detail)});
  };

  std::set<GoodId> goods;
  for (const auto& g : net.goods())
    if (!goods.insert(g).second) flag(g.value, "duplicate good", "good declared more than once");

  std::set<AgentId> seen;
  for (const auto& a : net.agents()) {
    const auto& id = a.id.value;
    if (!seen.insert(a.id).second) flag(id, "duplicate agent", "agent declared more than once");
    if (goods.contains(GoodId(id))) flag(id, "bipartite", "id used for both an agent and a good");

    std::set<GoodId> distinct_inputs(a.inputs.begin(), a.inputs.end());
    if (distinct_inputs.size() != a.inputs.size()) flag(id, "duplicate input", "an input good is listed twice");

    if (a.inputs.empty() && !a.output) {
      flag(id, "isolated agent", "agent has neither inputs nor an output");
    } else {
      switch (derive_role(a)) {
        case Role::Consumer:
          if (a.inputs.size() != 1)
            flag(id, "consumer arity", "consumer must have exactly one input, has " + std::to_string(a.inputs.size()));
          break;
        case Role::Supplier:
        case Role::Producer:
          if (!a.output_valuation) flag(id, "output valuation", "seller has no ask for its output");
          break;
      }
    }
    if (!a.output && a.output_valuation) flag(id, "output valuation", "valuation given without an output good");
    if (a.output_valuation && *a.output_valuation < 0) flag(id, "negative valuation", "output valuation below zero");

    for (const auto& in : a.inputs) {
      if (!goods.contains(in)) flag(id, "unknown good", "input '" + in.value + "' is not a declared good");
      auto v = a.input_valuations.find(in);
      if (v == a.input_valuations.end())
        flag(id, "missing valuation", "no valuation for input '" + in.value + "'");
      else if (v->second < 0)
        flag(id, "negative valuation", "valuation for '" + in.value + "' below zero");
    }
    for (const auto& [good, value] : a.input_valuations)
      if (!distinct_inputs.contains(good))
        flag(id, "stray valuation", "valuation for '" + good.value + "' which is not an input");
    if (a.output && !goods.contains(*a.output))
      flag(id, "unknown good", "output '" + a.output->value + "' is not a declared good");
  }

  auto graph = build_good_graph(net);
  auto order = kahn(graph);
  if (order.size() < graph.indegree.size()) {
    std::set<GoodId> ordered(order.begin(), order.end());
    std::string members;
    for (const auto& [good, deg] : graph.indegree) {
      if (ordered.contains(good)) continue;
      if (!members.empty()) members += ",";
      members += good.value;
    }
    flag(members, "acyclicity", "goods on or behind a dependency cycle: " + members);
  }
  return verdict;
}

std::vector<GoodId> clearing_order(const Network& net) {
  auto graph = build_good_graph(net);
  auto order = kahn(graph);
  if (order.size() < graph.indegree.size()) throw std::invalid_argument("network has a dependency cycle");
  return order;
}

}  // namespace remedysim
