#include "remedysim/agents.hpp"

#include <algorithm>

namespace remedysim {

std::string_view to_string(InfoSharingLevel l) noexcept {
  switch (l) {
    case InfoSharingLevel::NoShare: return "none";
    case InfoSharingLevel::Neighbor: return "neighbor";
    case InfoSharingLevel::Broadcast: return "broadcast";
  }
  return "?";
}

std::string_view to_string(RelianceLevel l) noexcept { return l == RelianceLevel::Low ? "low" : "high"; }
std::string_view to_string(Action a) noexcept { return a == Action::Breach ? "breach" : "perform"; }

std::string_view to_string(DamageBasis b) noexcept {
  switch (b) {
    case DamageBasis::Contract: return "contract";
    case DamageBasis::Market: return "market";
    case DamageBasis::Advertised: return "advertised";
    case DamageBasis::Estimated: return "estimated";
  }
  return "?";
}

std::vector<Order> make_bids(const AgentSpec& agent, const BidState& state, const AgentPolicy& policy) {
  std::vector<Order> orders;
  std::vector<GoodId> inputs = agent.inputs;
  std::sort(inputs.begin(), inputs.end());
  for (const auto& g : inputs) {
    if (state.covered_inputs.contains(g)) continue;
    orders.push_back({agent.id, g, Side::Buy, agent.input_valuations.at(g), 0});
  }
  if (agent.output && agent.output_valuation && !state.output_covered) {
    const bool gate_open = policy.reliance == RelianceLevel::High ||
                           std::all_of(agent.inputs.begin(), agent.inputs.end(),
                                       [&](const GoodId& g) { return state.covered_inputs.contains(g); });
    if (gate_open) orders.push_back({agent.id, *agent.output, Side::Sell, *agent.output_valuation, 0});
  }
  return orders;
}

std::optional<SharedInfo> visible_info(const VictimContext& victim, const AgentId& observer, InfoSharingLevel level,
                                       const Ledger& ledger, bool victim_shares) {
  if (!victim_shares) return std::nullopt;
  switch (level) {
    case InfoSharingLevel::NoShare: return std::nullopt;
    case InfoSharingLevel::Neighbor: {
      auto ids = ledger.of_agent(observer);
      const bool neighbor =
          std::any_of(ids.begin(), ids.end(), [&](ContractId id) { return ledger.at(id).is_party(victim.victim); });
      if (!neighbor) return std::nullopt;
      break;
    }
    case InfoSharingLevel::Broadcast: break;
  }
  return SharedInfo{expectation_damages(victim), victim.I_total};
}

BreachDecision decide_breach(const AgentId& agent, const Contract& contract, Money contingency_gain,
                             const RemedyRegime& regime, const VictimContext& victim,
                             const std::optional<SharedInfo>& info, const AgentPolicy& policy) {
  if (!contract.is_party(agent))
    throw std::invalid_argument("'" + agent.value + "' is not a party to contract " + std::to_string(contract.id));
  if (contract.state != ContractState::Active)
    throw std::invalid_argument("contract " + std::to_string(contract.id) + " is not active");

  BreachDecision d;
  d.estimated_gain = contingency_gain;
  if (std::holds_alternative<PartyDesigned>(regime)) {
    d.basis = DamageBasis::Contract;
    d.estimated_damages = compute_award(regime, victim).amount;
  } else if (std::holds_alternative<OpportunityCost>(regime)) {
    d.basis = DamageBasis::Market;
    d.estimated_damages = compute_award(regime, victim).amount;
  } else if (info) {
    d.basis = DamageBasis::Advertised;
    d.estimated_damages = compute_award(regime, victim).amount;
  } else {
    d.basis = DamageBasis::Estimated;
    d.estimated_damages = scale_round_half_up(policy.risk_attitude, contract.price);
  }
  const Money net = d.estimated_gain - d.estimated_damages;
  d.action = exceeds_fraction_of(net, policy.breach_propensity, contract.price) ? Action::Breach : Action::Perform;
  return d;
}

}  // namespace remedysim
