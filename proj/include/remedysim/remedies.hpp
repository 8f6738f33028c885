#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "remedysim/auction.hpp"
#include "remedysim/contracts.hpp"
#include "remedysim/network.hpp"

namespace remedysim {

struct FractionOfPrice {
  Rational alpha;
  bool operator==(const FractionOfPrice&) const = default;
};
struct FractionOfExpectation {
  Rational alpha;
  bool operator==(const FractionOfExpectation&) const = default;
};
struct ConstantDamages {
  Money amount{0};
  bool operator==(const ConstantDamages&) const = default;
};
using PartyDamageSpec = std::variant<FractionOfPrice, FractionOfExpectation, ConstantDamages>;

struct Expectation {
  bool operator==(const Expectation&) const = default;
};
struct OpportunityCost {
  bool operator==(const OpportunityCost&) const = default;
};
struct Reliance {
  bool capped{false};
  bool operator==(const Reliance&) const = default;
};
struct PartyDesigned {
  PartyDamageSpec spec;
  bool operator==(const PartyDesigned&) const = default;
};
using RemedyRegime = std::variant<Expectation, OpportunityCost, Reliance, PartyDesigned>;

std::string to_string(const PartyDamageSpec& spec);
std::string to_string(const RemedyRegime& regime);
bool is_valid(const PartyDamageSpec& spec) noexcept;

// Everything a damage formula may look at for one breach, seen from the victim.
struct VictimContext {
  Contract contract;
  AgentId victim;
  AgentId breacher;
  Role victim_role{Role::Supplier};
  bool victim_is_buyer{false};
  bool presumable{false};
  Money v{0};        // victim's valuation of the contract good
  Money I_ex{0};     // investments without the contract good
  Money I_total{0};  // investments
  Money V_total{0};  // bid sum over inputs
  Money V_ex{0};     // bid sum without the contract good
  std::optional<Money> R;      // reliance price (output pre-sold at)
  std::optional<Money> v_out;  // victim's ask for its output
  std::optional<Money> P_o;    // opportunity price
  std::optional<Money> P_s;    // substitute price
  bool notice{false};

  bool operator==(const VictimContext&) const = default;
};

// Context fields a formula may read; an award lists the ones it used.
enum class Field {
  ContractPrice,
  VictimSide,
  VictimRole,
  Presumable,
  Valuation,
  InvestmentsExcluding,
  Investments,
  BidSum,
  BidSumExcluding,
  ReliancePrice,
  OutputValuation,
  OpportunityPrice,
  SubstitutePrice,
  Notice,
};

std::string_view to_string(Field f) noexcept;

struct Assessment {
  Money amount{0};
  std::string case_label;
  std::vector<Field> evidence;

  bool operator==(const Assessment&) const = default;
};

struct DamageAward {
  RemedyRegime regime;
  Money amount{0};
  std::vector<Field> evidence;
  std::string case_label;

  bool operator==(const DamageAward&) const = default;
};

// Throws std::invalid_argument when the context is self-contradictory.
void check_context(const VictimContext& ctx);

// Snapshot of the ledger at breach time, taken before the contract is marked
// violated.
VictimContext make_victim_context(const Network& net, const Ledger& ledger, ContractId contract,
                                  const AgentId& breacher, bool notice, std::optional<Money> P_o,
                                  std::optional<Money> P_s);

Assessment assess_expectation(const VictimContext& ctx);
Assessment assess_opportunity(const VictimContext& ctx);
Assessment assess_reliance(const VictimContext& ctx, bool capped);
Assessment assess_party(const PartyDamageSpec& spec, const VictimContext& ctx);

Money expectation_damages(const VictimContext& ctx);
Money opportunity_damages(const VictimContext& ctx);
Money reliance_damages(const VictimContext& ctx);
// D'_r: the reliance award limited to the contract price unless notice was given.
Money capped_reliance_damages(const VictimContext& ctx);
Money notice_cap(Money reliance, Money contract_price, bool notice) noexcept;
Money party_damages(const PartyDamageSpec& spec, const VictimContext& ctx);

DamageAward compute_award(const RemedyRegime& regime, const VictimContext& ctx);

// Clearing price the victim gets by re-entering `book` with `victim_order`;
// any earlier order of the victim in the book is replaced. Absent when the
// victim does not trade.
std::optional<Money> find_substitute(std::span<const Order> book, const Order& victim_order);

struct SubstituteMatch {
  Money price{0};
  AgentId counterparty;
};
std::optional<SubstituteMatch> match_substitute(std::span<const Order> book, const Order& victim_order);

}  // namespace remedysim
