#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "remedysim/auction.hpp"
#include "remedysim/network.hpp"

namespace remedysim {

using ContractId = std::size_t;

enum class ContractState { Active, Violated, Performed };

std::string_view to_string(ContractState s) noexcept;

struct BreachEvent {
  AgentId breacher;
  Round time{0};
  bool notice_given{false};  // the victim had warned the breacher of its reliance

  bool operator==(const BreachEvent&) const = default;
};

struct Contract {
  ContractId id{0};
  AgentId seller;
  AgentId buyer;
  GoodId good;
  Money price{0};
  Round t_issue{0};
  Round t_maturity{0};
  ContractState state{ContractState::Active};
  std::optional<BreachEvent> breach;

  bool is_party(const AgentId& a) const noexcept { return a == seller || a == buyer; }
  const AgentId& counterparty(const AgentId& a) const noexcept { return a == seller ? buyer : seller; }
  // Active or Performed: the contract still binds the parties.
  bool live() const noexcept { return state != ContractState::Violated; }

  bool operator==(const Contract&) const = default;
};

// Append-only contract store with per-agent and per-good indexes.
class Ledger {
public:
  // One Active contract per trade at the clearing's uniform price.
  // Throws std::invalid_argument if the clearing has no price or a party
  // already holds an active contract on the same good and side.
  std::vector<ContractId> sign(const ClearingResult& clearing, Round t_issue, Round t_maturity);

  // Single contract outside an auction clearing (substitute deals).
  ContractId add(const AgentId& seller, const AgentId& buyer, const GoodId& good, Money price, Round t_issue,
                 Round t_maturity);

  // Active -> Violated. Throws std::logic_error on any other transition and
  // std::invalid_argument if the breach is malformed.
  void mark_violated(ContractId id, const BreachEvent& breach);
  // Active -> Performed.
  void mark_performed(ContractId id);

  const Contract& at(ContractId id) const;
  std::span<const Contract> contracts() const noexcept { return contracts_; }
  std::span<const ContractId> of_agent(const AgentId& a) const;
  std::span<const ContractId> of_good(const GoodId& g) const;

  // Active contract of `agent` on `good` on the given side, if any.
  std::optional<ContractId> active(const AgentId& agent, const GoodId& good, Side side) const;
  // Live (Active or Performed) contracts of `agent` on `good` on the given side.
  std::vector<ContractId> live(const AgentId& agent, const GoodId& good, Side side) const;

  bool operator==(const Ledger& o) const { return contracts_ == o.contracts_; }

private:
  ContractId append(Contract c);

  std::vector<Contract> contracts_;
  std::map<AgentId, std::vector<ContractId>> by_agent_;
  std::map<GoodId, std::vector<ContractId>> by_good_;
};

// I_p: sum of live purchase prices on the agent's input goods.
Money investments(const Ledger& ledger, const Network& net, const AgentId& agent);
// I_p^g: investments without the purchase of `good` (equal to I_p when `good`
// is not an input, e.g. the agent's output).
Money investments_excluding(const Ledger& ledger, const Network& net, const AgentId& agent, const GoodId& good);
// V_p: sum of the agent's input valuations.
Money bid_sum(const Network& net, const AgentId& agent);
// V_p^g.
Money bid_sum_excluding(const Network& net, const AgentId& agent, const GoodId& good);
// R_p: price of the live sale contract on the agent's output good.
std::optional<Money> reliance_price(const Ledger& ledger, const Network& net, const AgentId& agent);
// True iff the agent holds a live purchase contract for every input good.
bool is_presumable(const Ledger& ledger, const Network& net, const AgentId& agent);

}  // namespace remedysim
