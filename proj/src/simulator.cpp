#include "remedysim/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace remedysim {

std::string_view to_string(OdrMode m) noexcept {
  switch (m) {
    case OdrMode::Imposed: return "imposed";
    case OdrMode::PartySelected: return "party";
    case OdrMode::AllRemedies: return "evidence";
  }
  return "?";
}

std::string_view to_string(BreachCause c) noexcept {
  switch (c) {
    case BreachCause::OutsideOffer: return "outside-offer";
    case BreachCause::CostShock: return "cost-shock";
    case BreachCause::MissingInput: return "missing-input";
  }
  return "?";
}

const AgentPolicy& Scenario::policy_for(const AgentId& a) const {
  auto it = policies.find(a);
  return it == policies.end() ? default_policy : it->second;
}

const RemedyRegime& Scenario::regime_for(ContractId c) const {
  auto it = contract_regimes.find(c);
  return it == contract_regimes.end() ? regime : it->second;
}

void validate_scenario(const Scenario& s) {
  std::vector<std::string> problems;
  for (const auto& v : validate_network(s.network).violations)
    problems.push_back(v.rule + " (" + v.subject + "): " + v.detail);
  if (s.rounds < 1) problems.push_back("rounds must be at least 1");
  if (s.maturity_lag < 0) problems.push_back("maturity lag must be non-negative");
  if (!s.default_policy.valid()) problems.push_back("default policy parameters outside [0,1]");
  for (const auto& [agent, policy] : s.policies) {
    if (!s.network.find_agent(agent)) problems.push_back("policy for unknown agent '" + agent.value + "'");
    if (!policy.valid()) problems.push_back("policy parameters of '" + agent.value + "' outside [0,1]");
  }
  auto check_regime = [&](const RemedyRegime& r, const std::string& where) {
    if (const auto* p = std::get_if<PartyDesigned>(&r); p && !is_valid(p->spec))
      problems.push_back("invalid party damages in " + where);
  };
  check_regime(s.regime, "regime");
  for (const auto& [id, r] : s.contract_regimes) check_regime(r, "contract " + std::to_string(id));
  if (s.party_spec && !is_valid(*s.party_spec)) problems.push_back("invalid party damage spec");
  for (const auto& e : s.events) {
    if (e.time < 0 || e.time >= s.rounds)
      problems.push_back("event at round " + std::to_string(e.time) + " outside the run");
    if (const auto* u = std::get_if<UnfortunateShock>(&e.kind)) {
      if (!s.network.has_good(u->good)) problems.push_back("shock on unknown good '" + u->good.value + "'");
      if (u->delta <= 0) problems.push_back("shock on '" + u->good.value + "' must raise the cost");
    } else {
      const auto& f = std::get<FortunateOffer>(e.kind);
      if (!s.network.find_agent(f.agent)) problems.push_back("offer to unknown agent '" + f.agent.value + "'");
      if (f.offer < 0) problems.push_back("negative offer to '" + f.agent.value + "'");
    }
  }
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid scenario:";
  for (const auto& p : problems) msg << "\n  " << p;
  throw ScenarioError(msg.str());
}

DisputeRecord make_dispute_record(const VictimContext& ctx, OdrMode mode, std::optional<RemedyRegime> imposed,
                                  const std::optional<PartyDamageSpec>& party_spec) {
  DisputeRecord r;
  r.contract = ctx.contract;
  r.breacher = ctx.breacher;
  r.t_breach = ctx.contract.breach ? ctx.contract.breach->time : ctx.contract.t_issue;
  r.notice = ctx.notice;
  r.mode = mode;
  r.imposed = std::move(imposed);
  r.context = ctx;
  r.substitute_price = ctx.P_s;
  r.awards.push_back(compute_award(Expectation{}, ctx));
  r.awards.push_back(compute_award(OpportunityCost{}, ctx));
  r.awards.push_back(compute_award(Reliance{false}, ctx));
  r.awards.push_back(compute_award(Reliance{true}, ctx));
  std::optional<PartyDamageSpec> spec = party_spec;
  if (r.imposed)
    if (const auto* p = std::get_if<PartyDesigned>(&*r.imposed)) spec = p->spec;
  if (spec) r.awards.push_back(compute_award(PartyDesigned{*spec}, ctx));
  return r;
}

namespace {

// Replace every field outside `keep` with a different value.
VictimContext strip_to(const VictimContext& ctx, const std::vector<Field>& keep) {
  constexpr Money kPoison = 7919;
  auto kept = [&](Field f) { return std::find(keep.begin(), keep.end(), f) != keep.end(); };
  auto poison = [&](std::optional<Money>& m) { m = m ? std::nullopt : std::optional<Money>(kPoison); };
  VictimContext s = ctx;
  if (!kept(Field::ContractPrice)) s.contract.price += kPoison;
  if (!kept(Field::Presumable)) s.presumable = !s.presumable;
  if (!kept(Field::Valuation)) s.v += kPoison;
  if (!kept(Field::InvestmentsExcluding)) s.I_ex += kPoison;
  if (!kept(Field::Investments)) s.I_total += kPoison;
  if (!kept(Field::BidSum)) s.V_total += kPoison;
  if (!kept(Field::BidSumExcluding)) s.V_ex += kPoison;
  if (!kept(Field::ReliancePrice)) poison(s.R);
  if (!kept(Field::OutputValuation)) poison(s.v_out);
  if (!kept(Field::OpportunityPrice)) poison(s.P_o);
  if (!kept(Field::SubstitutePrice)) poison(s.P_s);
  if (!kept(Field::Notice)) s.notice = !s.notice;
  return s;
}

}  // namespace

bool verify_record(const DisputeRecord& record) {
  for (const auto& award : record.awards) {
    try {
      if (compute_award(award.regime, record.context) != award) return false;
      if (compute_award(award.regime, strip_to(record.context, award.evidence)).amount != award.amount) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

Money social_welfare(std::span<const Delivery> deliveries) noexcept {
  Money w = 0;
  for (const auto& d : deliveries) w += d.buyer_value - d.seller_cost;
  return w;
}

Money RunReport::total_welfare() const noexcept { return social_welfare(deliveries); }

Money RunReport::total_damages() const noexcept {
  Money d = 0;
  for (const auto& b : breaches) d += b.transferred;
  return d;
}

int breach_propagation_depth(const RunReport& report) noexcept {
  int depth = 0;
  for (const auto& b : report.breaches) depth = std::max(depth, b.depth);
  return depth;
}

// ---------------------------------------------------------------------------

Market::Market(Scenario scenario) : scenario_(std::move(scenario)) {
  validate_scenario(scenario_);
  network_ = scenario_.network;
  order_ = clearing_order(network_);
  for (std::size_t i = 0; i < order_.size(); ++i) order_index_[order_[i]] = i;
  for (const auto& a : network_.agents()) accounts_[a.id].agent = a.id;
}

Account& Market::account(const AgentId& a) { return accounts_.at(a); }

Money Market::production_cost(const AgentId& seller) const {
  const auto& spec = network_.agent(seller);
  return derive_role(spec) == Role::Supplier ? spec.output_valuation.value_or(0) : 0;
}

std::span<const Order> Market::book(Round t, const GoodId& good) const {
  auto it = books_.find({t, good});
  if (it == books_.end()) return {};
  return it->second.orders;
}

std::span<const Order> Market::residual(Round t, const GoodId& good) const {
  auto it = books_.find({t, good});
  if (it == books_.end()) return {};
  return it->second.residual;
}

std::optional<ClearingResult> Market::clearing(Round t, const GoodId& good) const {
  auto it = books_.find({t, good});
  if (it == books_.end()) return std::nullopt;
  return it->second.result;
}

void Market::apply_perturbations(Round t) {
  current_ = RoundMetrics{};
  current_.round = t;
  std::vector<AgentSpec> agents = network_.agents();
  bool costs_changed = false;
  for (const auto& e : scenario_.events) {
    if (e.time != t) continue;
    if (const auto* u = std::get_if<UnfortunateShock>(&e.kind)) {
      for (auto& a : agents) {
        if (derive_role(a) != Role::Supplier || a.output != u->good) continue;
        *a.output_valuation += u->delta;
        shocked_.insert(a.id);
        costs_changed = true;
      }
    } else {
      const auto& f = std::get<FortunateOffer>(e.kind);
      pending_offers_[f.agent].push_back(f.offer);
    }
  }
  if (costs_changed) network_ = Network(network_.goods(), std::move(agents));
}

BidState Market::bid_state(const AgentSpec& a) const {
  BidState s;
  const auto& ledger = report_.ledger;
  for (const auto& g : a.inputs)
    if (!ledger.live(a.id, g, Side::Buy).empty() || bought_outside_.contains({a.id, g})) s.covered_inputs.insert(g);
  if (a.output && !ledger.live(a.id, *a.output, Side::Sell).empty()) s.output_covered = true;
  return s;
}

void Market::collect_and_clear(Round t) {
  std::map<GoodId, std::vector<Order>> by_good;
  std::uint64_t seq = 0;
  for (const auto& a : network_.agents()) {
    if (finished_.contains(a.id)) continue;
    for (auto& o : make_bids(a, bid_state(a), scenario_.policy_for(a.id))) {
      o.seq = seq++;
      by_good[o.good].push_back(std::move(o));
    }
  }
  for (const auto& good : order_) {
    auto it = by_good.find(good);
    if (it == by_good.end()) continue;
    Book b;
    b.orders = std::move(it->second);
    b.result = clear(good, b.orders);
    if (b.result.price) {
      auto ids = report_.ledger.sign(b.result, t, t + scenario_.maturity_lag);
      current_.contracts_signed += static_cast<int>(ids.size());
    }
    for (const auto& o : b.orders) {
      const bool traded = std::any_of(b.result.trades.begin(), b.result.trades.end(), [&](const Trade& tr) {
        return (o.side == Side::Sell ? tr.seller : tr.buyer) == o.agent;
      });
      if (!traded) b.residual.push_back(o);
    }
    books_[{t, good}] = std::move(b);
  }
}

void Market::form_contracts(Round through) {
  for (Round t = 0; t <= through && t < scenario_.rounds; ++t) {
    apply_perturbations(t);
    collect_and_clear(t);
  }
}

std::optional<Money> Market::opportunity_for(const Contract& c, const AgentId& breacher) const {
  auto orders = book(c.t_issue, c.good);
  const bool present =
      std::any_of(orders.begin(), orders.end(), [&](const Order& o) { return o.agent == breacher; });
  if (!present) return std::nullopt;
  return opportunity_price(c.good, orders, breacher);
}

std::optional<SubstituteMatch> Market::substitute_for(const Contract& c, const AgentId& victim, Round t) const {
  if (!scenario_.substitutes) return std::nullopt;
  const AgentId& breacher = c.counterparty(victim);
  std::vector<Order> book;
  for (const auto& o : residual(t, c.good))
    if (o.agent != breacher) book.push_back(o);
  const auto& spec = network_.agent(victim);
  Order mine;
  mine.agent = victim;
  mine.good = c.good;
  if (c.buyer == victim) {
    mine.side = Side::Buy;
    mine.price = spec.input_valuations.at(c.good);
  } else {
    mine.side = Side::Sell;
    mine.price = spec.output_valuation.value_or(0);
  }
  auto match = match_substitute(book, mine);
  // The counterparty must still be free to contract.
  if (match && report_.ledger.active(match->counterparty, c.good, mine.side == Side::Buy ? Side::Sell : Side::Buy))
    return std::nullopt;
  return match;
}

VictimContext Market::context_for(ContractId id, const AgentId& breacher, Round t, bool notice) const {
  const auto& c = report_.ledger.at(id);
  const AgentId& victim = c.counterparty(breacher);
  std::optional<Money> ps;
  if (auto m = substitute_for(c, victim, t)) ps = m->price;
  return make_victim_context(network_, report_.ledger, id, breacher, notice, opportunity_for(c, breacher), ps);
}

DisputeRecord Market::dispute_for(ContractId id, const AgentId& breacher, Round t, bool notice) const {
  const auto& c = report_.ledger.at(id);
  if (!c.is_party(breacher))
    throw std::invalid_argument("'" + breacher.value + "' is not a party to contract " + std::to_string(id));
  if (t < c.t_issue || t > c.t_maturity)
    throw std::invalid_argument("breach round outside the life of contract " + std::to_string(id));
  auto ctx = context_for(id, breacher, t, notice);
  ctx.contract.state = ContractState::Violated;
  ctx.contract.breach = BreachEvent{breacher, t, notice};
  std::optional<RemedyRegime> imposed;
  if (scenario_.odr_mode != OdrMode::AllRemedies) imposed = scenario_.regime_for(id);
  return make_dispute_record(ctx, scenario_.odr_mode, imposed, scenario_.party_spec);
}

std::optional<Market::Gain> Market::seller_gain(const Contract& c) const {
  const auto& spec = network_.agent(c.seller);
  if (spec.output != c.good) return std::nullopt;
  std::optional<Gain> best;
  auto consider = [&](Gain g) {
    if (!best || g.amount > best->amount) best = g;
  };
  const Role role = derive_role(spec);
  if (auto it = pending_offers_.find(c.seller); it != pending_offers_.end() && !it->second.empty()) {
    // A producer can only serve an outside buyer once all inputs are secured.
    if (role == Role::Supplier || is_presumable(report_.ledger, network_, c.seller)) {
      Money offer = *std::max_element(it->second.begin(), it->second.end());
      consider({offer - c.price, BreachCause::OutsideOffer, offer});
    }
  }
  if (role == Role::Supplier && shocked_.contains(c.seller))
    consider({*spec.output_valuation - c.price, BreachCause::CostShock, 0});
  return best;
}

std::optional<Market::Gain> Market::buyer_gain(const Contract& c) const {
  const auto& spec = network_.agent(c.buyer);
  if (derive_role(spec) != Role::Consumer) return std::nullopt;
  auto it = pending_offers_.find(c.buyer);
  if (it == pending_offers_.end() || it->second.empty()) return std::nullopt;
  Money offer = *std::min_element(it->second.begin(), it->second.end());
  return Gain{c.price - offer, BreachCause::OutsideOffer, offer};
}

void Market::evaluate_breaches(Round t) {
  const auto& ledger = report_.ledger;
  const std::size_t n = ledger.contracts().size();
  for (ContractId id = 0; id < n; ++id) {
    for (const bool seller_side : {true, false}) {
      const auto& c = ledger.at(id);
      if (c.state != ContractState::Active) break;
      auto gain = seller_side ? seller_gain(c) : buyer_gain(c);
      if (!gain) continue;
      const AgentId breacher = seller_side ? c.seller : c.buyer;
      const AgentId victim = c.counterparty(breacher);
      const auto& victim_policy = scenario_.policy_for(victim);
      const auto ctx = context_for(id, breacher, t, victim_policy.gives_notice);
      const auto& regime = scenario_.regime_for(id);
      const auto info = visible_info(ctx, breacher, scenario_.info, ledger, victim_policy.shares_info);
      const auto decision =
          decide_breach(breacher, c, gain->amount, regime, ctx, info, scenario_.policy_for(breacher));
      report_.decisions.push_back({t, id, breacher, decision, compute_award(regime, ctx).amount});
      if (decision.action == Action::Breach) settle(id, breacher, t, gain->cause, std::nullopt, gain->offer);
    }
  }
}

void Market::settle(ContractId id, AgentId breacher, Round t, BreachCause cause,
                    std::optional<std::size_t> caused_by, Money offer) {
  auto& ledger = report_.ledger;
  const Contract c = ledger.at(id);
  const AgentId victim = c.counterparty(breacher);
  const bool notice = scenario_.policy_for(victim).gives_notice;
  const auto match = substitute_for(c, victim, t);
  auto ctx = context_for(id, breacher, t, notice);
  const auto& regime = scenario_.regime_for(id);
  const auto award = compute_award(regime, ctx);
  // Negative harm imposes no damages.
  const Money transferred = std::max<Money>(award.amount, 0);

  ledger.mark_violated(id, BreachEvent{breacher, t, notice});
  account(breacher).damages_paid += transferred;
  account(victim).damages_received += transferred;

  BreachRecord rec;
  rec.contract = id;
  rec.breacher = breacher;
  rec.victim = victim;
  rec.round = t;
  rec.cause = cause;
  rec.caused_by = caused_by;
  rec.depth = caused_by ? report_.breaches[*caused_by].depth + 1 : 1;
  rec.award = award.amount;
  rec.transferred = transferred;

  if (match) {
    const bool victim_buys = c.buyer == victim;
    rec.substitute = victim_buys ? ledger.add(match->counterparty, victim, c.good, match->price, t, c.t_maturity)
                                 : ledger.add(victim, match->counterparty, c.good, match->price, t, c.t_maturity);
    auto& res = books_.at({t, c.good}).residual;
    std::erase_if(res, [&](const Order& o) { return o.agent == match->counterparty; });
  }

  if (cause == BreachCause::OutsideOffer) {
    auto& offers = pending_offers_[breacher];
    offers.erase(std::find(offers.begin(), offers.end(), offer));
    Delivery d;
    d.round = t;
    d.good = c.good;
    d.price = offer;
    if (c.seller == breacher) {
      d.seller = breacher;
      d.seller_cost = production_cost(breacher);
      d.buyer_value = offer;
      account(breacher).sales += offer;
      account(breacher).production += d.seller_cost;
      finished_.insert(breacher);
    } else {
      d.buyer = breacher;
      d.seller_cost = offer;
      d.buyer_value = network_.agent(breacher).input_valuations.at(c.good);
      account(breacher).purchases += offer;
      account(breacher).consumption += d.buyer_value;
      bought_outside_.insert({breacher, c.good});
      finished_.insert(breacher);
    }
    current_.welfare += d.buyer_value - d.seller_cost;
    ++current_.deliveries;
    report_.deliveries.push_back(std::move(d));
  }

  ++current_.breaches;
  current_.damages += transferred;
  current_.propagation_depth = std::max(current_.propagation_depth, rec.depth);
  breach_of_contract_[id] = report_.breaches.size();
  report_.breaches.push_back(std::move(rec));
  auto settled = ctx;
  settled.contract = ledger.at(id);
  std::optional<RemedyRegime> imposed;
  if (scenario_.odr_mode != OdrMode::AllRemedies) imposed = regime;
  report_.disputes.push_back(make_dispute_record(settled, scenario_.odr_mode, imposed, scenario_.party_spec));
}

void Market::deliver(ContractId id, Round t) {
  auto& ledger = report_.ledger;
  ledger.mark_performed(id);
  const auto& c = ledger.at(id);
  Delivery d;
  d.round = t;
  d.good = c.good;
  d.contract = id;
  d.seller = c.seller;
  d.buyer = c.buyer;
  d.price = c.price;
  d.seller_cost = production_cost(c.seller);
  const auto& buyer = network_.agent(c.buyer);
  d.buyer_value = derive_role(buyer) == Role::Consumer ? buyer.input_valuations.at(c.good) : 0;

  account(c.seller).sales += c.price;
  account(c.seller).production += d.seller_cost;
  account(c.buyer).purchases += c.price;
  account(c.buyer).consumption += d.buyer_value;
  if (derive_role(network_.agent(c.seller)) != Role::Consumer) finished_.insert(c.seller);
  if (derive_role(buyer) == Role::Consumer) finished_.insert(c.buyer);

  current_.welfare += d.buyer_value - d.seller_cost;
  ++current_.deliveries;
  report_.deliveries.push_back(std::move(d));
}

void Market::mature(Round t) {
  auto& ledger = report_.ledger;
  // Substitutes signed while settling can fall due in this same round.
  std::set<ContractId> handled;
  for (;;) {
    std::vector<ContractId> due;
    for (const auto& c : ledger.contracts())
      if (c.state == ContractState::Active && c.t_maturity <= t && !handled.contains(c.id)) due.push_back(c.id);
    if (due.empty()) break;
    std::stable_sort(due.begin(), due.end(), [&](ContractId a, ContractId b) {
      return order_index_.at(ledger.at(a).good) < order_index_.at(ledger.at(b).good);
    });
    for (ContractId id : due) {
      handled.insert(id);
      mature_one(id, t);
    }
  }
}

void Market::mature_one(ContractId id, Round t) {
  auto& ledger = report_.ledger;
  const auto& c = ledger.at(id);
  if (c.state != ContractState::Active) return;
  const auto& seller = network_.agent(c.seller);
  if (derive_role(seller) == Role::Producer && !is_presumable(ledger, network_, c.seller)) {
    // Without every input the producer cannot deliver. Trace the breach to
    // the latest upstream breach it suffered while this sale was in force;
    // earlier ones predate the commitment and did not cause it.
    std::optional<std::size_t> cause;
    for (std::size_t i = report_.breaches.size(); i-- > 0;) {
      const auto& b = report_.breaches[i];
      const auto& upstream = ledger.at(b.contract);
      if (b.victim == c.seller && upstream.buyer == c.seller && b.round >= c.t_issue) {
        cause = i;
        break;
      }
    }
    settle(id, c.seller, t, BreachCause::MissingInput, cause, 0);
    return;
  }
  deliver(id, t);
}

void Market::close_round(Round) { report_.rounds.push_back(current_); }

RunReport Market::finish() && {
  report_.accounts.clear();
  for (const auto& [id, acc] : accounts_) report_.accounts.push_back(acc);
  return std::move(report_);
}

std::vector<BreachSuggestion> Market::suggest_pairs(const Perturbation& contingency) const {
  Market probe = *this;
  probe.current_ = RoundMetrics{};
  const Round t = contingency.time;
  if (const auto* u = std::get_if<UnfortunateShock>(&contingency.kind)) {
    std::vector<AgentSpec> agents = probe.network_.agents();
    for (auto& a : agents) {
      if (derive_role(a) != Role::Supplier || a.output != u->good) continue;
      *a.output_valuation += u->delta;
      probe.shocked_.insert(a.id);
    }
    probe.network_ = Network(probe.network_.goods(), std::move(agents));
  } else {
    const auto& f = std::get<FortunateOffer>(contingency.kind);
    probe.pending_offers_[f.agent].push_back(f.offer);
  }

  std::vector<BreachSuggestion> out;
  const auto& ledger = probe.report_.ledger;
  for (const auto& c : ledger.contracts()) {
    if (c.state != ContractState::Active || t < c.t_issue || t > c.t_maturity) continue;
    for (const bool seller_side : {true, false}) {
      auto gain = seller_side ? probe.seller_gain(c) : probe.buyer_gain(c);
      if (!gain) continue;
      const AgentId breacher = seller_side ? c.seller : c.buyer;
      const AgentId victim = c.counterparty(breacher);
      const auto ctx = probe.context_for(c.id, breacher, t, probe.scenario_.policy_for(victim).gives_notice);
      const Money damages = std::max<Money>(compute_award(probe.scenario_.regime_for(c.id), ctx).amount, 0);
      BreachSuggestion s{c.id, breacher, victim, gain->amount - damages, damages - expectation_damages(ctx), damages};
      if (s.breacher_gain > 0 && s.victim_gain > 0) out.push_back(std::move(s));
    }
  }
  return out;
}

RunReport run(const Scenario& scenario) {
  Market market(scenario);
  for (Round t = 0; t < scenario.rounds; ++t) {
    market.apply_perturbations(t);
    market.collect_and_clear(t);
    market.evaluate_breaches(t);
    market.mature(t);
    market.close_round(t);
  }
  return std::move(market).finish();
}

}  // namespace remedysim
