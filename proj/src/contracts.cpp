#include "remedysim/contracts.hpp"

#include <algorithm>

namespace remedysim {

std::string_view to_string(ContractState s) noexcept {
  switch (s) {
    case ContractState::Active: return "active";
    case ContractState::Violated: return "violated";
    case ContractState::Performed: return "performed";
  }
  return "?";
}

std::vector<ContractId> Ledger::sign(const ClearingResult& clearing, Round t_issue, Round t_maturity) {
  if (!clearing.price) throw std::invalid_argument("cannot sign contracts for '" + clearing.good.value + "' without a price");
  if (t_issue > t_maturity) throw std::invalid_argument("maturity precedes issue");
  for (const auto& t : clearing.trades) {
    if (active(t.seller, clearing.good, Side::Sell))
      throw std::invalid_argument("'" + t.seller.value + "' already has an active sale of '" + clearing.good.value + "'");
    if (active(t.buyer, clearing.good, Side::Buy))
      throw std::invalid_argument("'" + t.buyer.value + "' already has an active purchase of '" + clearing.good.value + "'");
  }
  std::vector<ContractId> ids;
  ids.reserve(clearing.trades.size());
  for (const auto& t : clearing.trades)
    ids.push_back(add(t.seller, t.buyer, clearing.good, *clearing.price, t_issue, t_maturity));
  return ids;
}

ContractId Ledger::add(const AgentId& seller, const AgentId& buyer, const GoodId& good, Money price, Round t_issue,
                       Round t_maturity) {
  if (t_issue > t_maturity) throw std::invalid_argument("maturity precedes issue");
  if (price < 0) throw std::invalid_argument("negative contract price");
  if (active(seller, good, Side::Sell) || active(buyer, good, Side::Buy))
    throw std::invalid_argument("duplicate active contract on '" + good.value + "'");
  Contract c;
  c.seller = seller;
  c.buyer = buyer;
  c.good = good;
  c.price = price;
  c.t_issue = t_issue;
  c.t_maturity = t_maturity;
  return append(std::move(c));
}

ContractId Ledger::append(Contract c) {
  c.id = contracts_.size();
  by_agent_[c.seller].push_back(c.id);
  by_agent_[c.buyer].push_back(c.id);
  by_good_[c.good].push_back(c.id);
  contracts_.push_back(std::move(c));
  return contracts_.back().id;
}

void Ledger::mark_violated(ContractId id, const BreachEvent& breach) {
  auto& c = contracts_.at(id);
  if (c.state != ContractState::Active)
    throw std::logic_error("contract " + std::to_string(id) + " is " + std::string(to_string(c.state)) + ", not active");
  if (!c.is_party(breach.breacher))
    throw std::invalid_argument("'" + breach.breacher.value + "' is not a party to contract " + std::to_string(id));
  if (breach.time < c.t_issue || breach.time > c.t_maturity)
    throw std::invalid_argument("breach time outside [t_issue, t_maturity] of contract " + std::to_string(id));
  c.state = ContractState::Violated;
  c.breach = breach;
}

void Ledger::mark_performed(ContractId id) {
  auto& c = contracts_.at(id);
  if (c.state != ContractState::Active)
    throw std::logic_error("contract " + std::to_string(id) + " is " + std::string(to_string(c.state)) + ", not active");
  c.state = ContractState::Performed;
}

const Contract& Ledger::at(ContractId id) const { return contracts_.at(id); }

std::span<const ContractId> Ledger::of_agent(const AgentId& a) const {
  auto it = by_agent_.find(a);
  if (it == by_agent_.end()) return {};
  return it->second;
}

std::span<const ContractId> Ledger::of_good(const GoodId& g) const {
  auto it = by_good_.find(g);
  if (it == by_good_.end()) return {};
  return it->second;
}

std::optional<ContractId> Ledger::active(const AgentId& agent, const GoodId& good, Side side) const {
  for (auto id : of_agent(agent)) {
    const auto& c = contracts_[id];
    if (c.good != good || c.state != ContractState::Active) continue;
    if ((side == Side::Sell ? c.seller : c.buyer) == agent) return id;
  }
  return std::nullopt;
}

std::vector<ContractId> Ledger::live(const AgentId& agent, const GoodId& good, Side side) const {
  std::vector<ContractId> out;
  for (auto id : of_agent(agent)) {
    const auto& c = contracts_[id];
    if (c.good != good || !c.live()) continue;
    if ((side == Side::Sell ? c.seller : c.buyer) == agent) out.push_back(id);
  }
  return out;
}

namespace {

Money purchases_of(const Ledger& ledger, const AgentId& agent, const GoodId& good) {
  Money sum = 0;
  for (auto id : ledger.live(agent, good, Side::Buy)) sum += ledger.at(id).price;
  return sum;
}

}  // namespace

Money investments(const Ledger& ledger, const Network& net, const AgentId& agent) {
  Money sum = 0;
  for (const auto& g : net.agent(agent).inputs) sum += purchases_of(ledger, agent, g);
  return sum;
}

Money investments_excluding(const Ledger& ledger, const Network& net, const AgentId& agent, const GoodId& good) {
  Money sum = 0;
  for (const auto& g : net.agent(agent).inputs)
    if (g != good) sum += purchases_of(ledger, agent, g);
  return sum;
}

Money bid_sum(const Network& net, const AgentId& agent) {
  const auto& a = net.agent(agent);
  Money sum = 0;
  for (const auto& g : a.inputs) sum += a.input_valuations.at(g);
  return sum;
}

Money bid_sum_excluding(const Network& net, const AgentId& agent, const GoodId& good) {
  const auto& a = net.agent(agent);
  Money sum = 0;
  for (const auto& g : a.inputs)
    if (g != good) sum += a.input_valuations.at(g);
  return sum;
}

std::optional<Money> reliance_price(const Ledger& ledger, const Network& net, const AgentId& agent) {
  const auto& a = net.agent(agent);
  if (!a.output) return std::nullopt;
  auto ids = ledger.live(agent, *a.output, Side::Sell);
  if (ids.empty()) return std::nullopt;
  return ledger.at(ids.front()).price;
}

bool is_presumable(const Ledger& ledger, const Network& net, const AgentId& agent) {
  const auto& a = net.agent(agent);
  return std::all_of(a.inputs.begin(), a.inputs.end(),
                     [&](const GoodId& g) { return !ledger.live(agent, g, Side::Buy).empty(); });
}

}  // namespace remedysim
