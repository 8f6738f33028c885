#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "remedysim/agents.hpp"
#include "remedysim/auction.hpp"
#include "remedysim/contracts.hpp"
#include "remedysim/network.hpp"
#include "remedysim/remedies.hpp"

namespace remedysim {

// Raises the production cost of every supplier of `good`.
struct UnfortunateShock {
  GoodId good;
  Money delta{0};
  bool operator==(const UnfortunateShock&) const = default;
};

// An outside party offers `agent` a better deal: a buyer for a seller's
// output, or a seller for a consumer's input.
struct FortunateOffer {
  AgentId agent;
  Money offer{0};
  bool operator==(const FortunateOffer&) const = default;
};

struct Perturbation {
  Round time{0};
  std::variant<UnfortunateShock, FortunateOffer> kind;
  bool operator==(const Perturbation&) const = default;
};

// How disputes are settled: one regime for everyone, a regime chosen per
// contract, or every remedy collected as evidence.
enum class OdrMode { Imposed, PartySelected, AllRemedies };
std::string_view to_string(OdrMode m) noexcept;

struct Scenario {
  Network network;
  AgentPolicy default_policy;
  std::map<AgentId, AgentPolicy> policies;
  RemedyRegime regime{Expectation{}};
  std::optional<PartyDamageSpec> party_spec;
  std::map<ContractId, RemedyRegime> contract_regimes;
  OdrMode odr_mode{OdrMode::Imposed};
  InfoSharingLevel info{InfoSharingLevel::Broadcast};
  Round rounds{1};
  Round maturity_lag{0};
  bool substitutes{false};
  std::vector<Perturbation> events;
  std::uint64_t seed{0};

  const AgentPolicy& policy_for(const AgentId& a) const;
  const RemedyRegime& regime_for(ContractId c) const;
  bool operator==(const Scenario&) const = default;
};

// Throws ScenarioError describing every problem found.
void validate_scenario(const Scenario& s);

struct RoundMetrics {
  Round round{0};
  Money welfare{0};
  int contracts_signed{0};
  int deliveries{0};
  int breaches{0};
  Money damages{0};
  int propagation_depth{0};
  bool operator==(const RoundMetrics&) const = default;
};

// One unit changing hands. Outside parties appear with no agent id; their
// valuation is the offer price.
struct Delivery {
  Round round{0};
  GoodId good;
  std::optional<ContractId> contract;
  std::optional<AgentId> seller;
  std::optional<AgentId> buyer;
  Money price{0};
  Money seller_cost{0};
  Money buyer_value{0};
  bool operator==(const Delivery&) const = default;
};

struct Account {
  AgentId agent;
  Money sales{0};
  Money purchases{0};
  Money damages_received{0};
  Money damages_paid{0};
  Money consumption{0};
  Money production{0};

  Money payoff() const noexcept {
    return sales - purchases + damages_received - damages_paid + consumption - production;
  }
  bool operator==(const Account&) const = default;
};

enum class BreachCause { OutsideOffer, CostShock, MissingInput };
std::string_view to_string(BreachCause c) noexcept;

struct BreachRecord {
  ContractId contract{0};
  AgentId breacher;
  AgentId victim;
  Round round{0};
  BreachCause cause{BreachCause::OutsideOffer};
  std::optional<std::size_t> caused_by;  // index of the upstream breach
  int depth{1};
  Money award{0};
  Money transferred{0};
  std::optional<ContractId> substitute;
  bool operator==(const BreachRecord&) const = default;
};

struct DecisionRecord {
  Round round{0};
  ContractId contract{0};
  AgentId agent;
  BreachDecision decision;
  Money exact_damages{0};
  bool operator==(const DecisionRecord&) const = default;
};

struct DisputeRecord {
  Contract contract;
  AgentId breacher;
  Round t_breach{0};
  bool notice{false};
  OdrMode mode{OdrMode::Imposed};
  std::optional<RemedyRegime> imposed;
  VictimContext context;
  std::vector<DamageAward> awards;
  std::optional<Money> substitute_price;
  bool operator==(const DisputeRecord&) const = default;
};

// Every remedy the framework knows, computed on one context. The party award
// is included when a party spec is known.
DisputeRecord make_dispute_record(const VictimContext& ctx, OdrMode mode, std::optional<RemedyRegime> imposed,
                                  const std::optional<PartyDamageSpec>& party_spec);

// True iff every award recomputes to the recorded amount both from the full
// context and from a context stripped to the award's listed evidence.
bool verify_record(const DisputeRecord& record);

struct RunReport {
  std::vector<RoundMetrics> rounds;
  Ledger ledger;
  std::vector<BreachRecord> breaches;
  std::vector<DisputeRecord> disputes;
  std::vector<DecisionRecord> decisions;
  std::vector<Delivery> deliveries;
  std::vector<Account> accounts;

  Money total_welfare() const noexcept;
  Money total_damages() const noexcept;
  bool operator==(const RunReport&) const = default;
};

Money social_welfare(std::span<const Delivery> deliveries) noexcept;
int breach_propagation_depth(const RunReport& report) noexcept;

struct BreachSuggestion {
  ContractId contract{0};
  AgentId breacher;
  AgentId victim;
  Money breacher_gain{0};  // contingency gain minus damages paid
  Money victim_gain{0};    // damages received minus the performance value lost
  Money damages{0};
  bool operator==(const BreachSuggestion&) const = default;
};

// Round-by-round market state. `run` drives every phase; the CLI uses the
// formation phases alone to inspect contracts before any breach.
class Market {
public:
  explicit Market(Scenario scenario);

  void apply_perturbations(Round t);
  void collect_and_clear(Round t);
  void evaluate_breaches(Round t);
  void mature(Round t);
  void close_round(Round t);

  // Apply perturbations and clear markets for rounds [0, through].
  void form_contracts(Round through);

  // Remedies for a hypothetical breach at `t`, without settling it.
  DisputeRecord dispute_for(ContractId contract, const AgentId& breacher, Round t, bool notice) const;

  // Active contracts where breaching under the contingency leaves both parties
  // strictly better off than performing.
  std::vector<BreachSuggestion> suggest_pairs(const Perturbation& contingency) const;

  const Scenario& scenario() const noexcept { return scenario_; }
  const Network& network() const noexcept { return network_; }
  const Ledger& ledger() const noexcept { return report_.ledger; }
  // Orders the good's auction saw in round t (empty if it did not run).
  std::span<const Order> book(Round t, const GoodId& good) const;
  // Orders left unmatched after that auction.
  std::span<const Order> residual(Round t, const GoodId& good) const;
  std::optional<ClearingResult> clearing(Round t, const GoodId& good) const;

  RunReport finish() &&;

private:
  struct Book {
    std::vector<Order> orders;
    std::vector<Order> residual;
    ClearingResult result;
  };
  struct Gain {
    Money amount{0};
    BreachCause cause{BreachCause::OutsideOffer};
    Money offer{0};
  };

  VictimContext context_for(ContractId id, const AgentId& breacher, Round t, bool notice) const;
  std::optional<Money> opportunity_for(const Contract& c, const AgentId& breacher) const;
  std::optional<SubstituteMatch> substitute_for(const Contract& c, const AgentId& victim, Round t) const;
  std::optional<Gain> seller_gain(const Contract& c) const;
  std::optional<Gain> buyer_gain(const Contract& c) const;
  BidState bid_state(const AgentSpec& a) const;
  void settle(ContractId id, AgentId breacher, Round t, BreachCause cause, std::optional<std::size_t> caused_by,
              Money offer);
  void deliver(ContractId id, Round t);
  void mature_one(ContractId id, Round t);
  Account& account(const AgentId& a);
  Money production_cost(const AgentId& seller) const;

  Scenario scenario_;
  Network network_;
  std::vector<GoodId> order_;
  std::map<GoodId, std::size_t> order_index_;
  std::map<std::pair<Round, GoodId>, Book> books_;
  std::map<AgentId, std::vector<Money>> pending_offers_;
  std::set<AgentId> shocked_;
  std::set<AgentId> finished_;
  std::set<std::pair<AgentId, GoodId>> bought_outside_;
  std::map<AgentId, Account> accounts_;
  std::map<ContractId, std::size_t> breach_of_contract_;
  RunReport report_;
  RoundMetrics current_;
};

// Full run: validate, then each round apply perturbations, bid and clear,
// decide and settle breaches, mature contracts, and record metrics.
RunReport run(const Scenario& scenario);

}  // namespace remedysim
