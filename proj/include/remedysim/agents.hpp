#pragma once

#include <optional>
#include <set>
#include <vector>

#include "remedysim/auction.hpp"
#include "remedysim/contracts.hpp"
#include "remedysim/network.hpp"
#include "remedysim/remedies.hpp"

namespace remedysim {

enum class InfoSharingLevel { NoShare, Neighbor, Broadcast };
enum class RelianceLevel { Low, High };

std::string_view to_string(InfoSharingLevel l) noexcept;
std::string_view to_string(RelianceLevel l) noexcept;

struct AgentPolicy {
  // High: offer the output at once. Low: only after every input is contracted.
  RelianceLevel reliance{RelianceLevel::High};
  // Breach only when the net gain exceeds this fraction of the contract price.
  Rational breach_propensity{0};
  bool shares_info{true};
  // Pessimism used when damages cannot be computed: estimate = beta * P_c.
  Rational risk_attitude{1};
  // The agent warns its partners of its reliance (lifts the reliance cap).
  bool gives_notice{false};

  bool valid() const noexcept { return breach_propensity.in_unit_interval() && risk_attitude.in_unit_interval(); }
  bool operator==(const AgentPolicy&) const = default;
};

// What the agent already holds, as seen by the bidding policy.
struct BidState {
  std::set<GoodId> covered_inputs;
  bool output_covered{false};
};

// Truthful orders for the round, seq left at 0 for the caller to assign.
std::vector<Order> make_bids(const AgentSpec& agent, const BidState& state, const AgentPolicy& policy);

// What a potential victim advertises, by remedy.
struct SharedInfo {
  Money expected_profit{0};  // consulted under expectation damages
  Money investments{0};      // consulted under reliance damages

  bool operator==(const SharedInfo&) const = default;
};

std::optional<SharedInfo> visible_info(const VictimContext& victim, const AgentId& observer, InfoSharingLevel level,
                                       const Ledger& ledger, bool victim_shares = true);

enum class Action { Perform, Breach };
enum class DamageBasis { Contract, Market, Advertised, Estimated };

std::string_view to_string(Action a) noexcept;
std::string_view to_string(DamageBasis b) noexcept;

struct BreachDecision {
  Action action{Action::Perform};
  Money estimated_gain{0};
  Money estimated_damages{0};
  DamageBasis basis{DamageBasis::Estimated};

  bool operator==(const BreachDecision&) const = default;
};

// Throws std::invalid_argument if `agent` is not a party or the contract is
// not active.
BreachDecision decide_breach(const AgentId& agent, const Contract& contract, Money contingency_gain,
                             const RemedyRegime& regime, const VictimContext& victim,
                             const std::optional<SharedInfo>& info, const AgentPolicy& policy);

}  // namespace remedysim
