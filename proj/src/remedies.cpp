#include "remedysim/remedies.hpp"

#include <algorithm>

namespace remedysim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Reads context fields and remembers which ones were used.
class Reader {
public:
  explicit Reader(const VictimContext& ctx) : ctx_(ctx) {}

  Money price() { return note(Field::ContractPrice), ctx_.contract.price; }
  bool buyer() { return note(Field::VictimSide), ctx_.victim_is_buyer; }
  Role role() { return note(Field::VictimRole), ctx_.victim_role; }
  bool presumable() { return note(Field::Presumable), ctx_.presumable; }
  Money v() { return note(Field::Valuation), ctx_.v; }
  Money I_ex() { return note(Field::InvestmentsExcluding), ctx_.I_ex; }
  Money I_total() { return note(Field::Investments), ctx_.I_total; }
  Money V_total() { return note(Field::BidSum), ctx_.V_total; }
  Money V_ex() { return note(Field::BidSumExcluding), ctx_.V_ex; }
  const std::optional<Money>& R() { return note(Field::ReliancePrice), ctx_.R; }
  const std::optional<Money>& v_out() { return note(Field::OutputValuation), ctx_.v_out; }
  const std::optional<Money>& P_o() { return note(Field::OpportunityPrice), ctx_.P_o; }
  const std::optional<Money>& P_s() { return note(Field::SubstitutePrice), ctx_.P_s; }
  bool notice() { return note(Field::Notice), ctx_.notice; }

  Assessment finish(Money amount, std::string label) {
    return {amount, std::move(label), std::move(fields_)};
  }

private:
  void note(Field f) {
    if (std::find(fields_.begin(), fields_.end(), f) == fields_.end()) fields_.push_back(f);
  }

  const VictimContext& ctx_;
  std::vector<Field> fields_;
};

Money clamp0(Money x) { return std::max<Money>(x, 0); }

// Shared by the three regimes: with a substitute, only the price gap counts.
Assessment substitute_gap(Reader& r, Money reference, Money substitute) {
  if (r.buyer()) return r.finish(clamp0(substitute - reference), "substitute, buyer victim");
  return r.finish(clamp0(reference - substitute), "substitute, seller victim");
}

}  // namespace

std::string to_string(const PartyDamageSpec& spec) {
  return std::visit(overloaded{
                        [](const FractionOfPrice& f) { return "fraction-price " + to_string(f.alpha); },
                        [](const FractionOfExpectation& f) { return "fraction-expectation " + to_string(f.alpha); },
                        [](const ConstantDamages& c) { return "constant " + std::to_string(c.amount); },
                    },
                    spec);
}

std::string to_string(const RemedyRegime& regime) {
  return std::visit(overloaded{
                        [](const Expectation&) -> std::string { return "expectation"; },
                        [](const OpportunityCost&) -> std::string { return "opportunity"; },
                        [](const Reliance& r) -> std::string { return r.capped ? "reliance-capped" : "reliance"; },
                        [](const PartyDesigned& p) { return "party " + to_string(p.spec); },
                    },
                    regime);
}

bool is_valid(const PartyDamageSpec& spec) noexcept {
  return std::visit(overloaded{
                        [](const FractionOfPrice& f) { return f.alpha.in_unit_interval(); },
                        [](const FractionOfExpectation& f) { return f.alpha.in_unit_interval(); },
                        [](const ConstantDamages& c) { return c.amount >= 0; },
                    },
                    spec);
}

std::string_view to_string(Field f) noexcept {
  switch (f) {
    case Field::ContractPrice: return "contract_price";
    case Field::VictimSide: return "victim_is_buyer";
    case Field::VictimRole: return "victim_role";
    case Field::Presumable: return "presumable";
    case Field::Valuation: return "valuation";
    case Field::InvestmentsExcluding: return "investments_excluding";
    case Field::Investments: return "investments";
    case Field::BidSum: return "bid_sum";
    case Field::BidSumExcluding: return "bid_sum_excluding";
    case Field::ReliancePrice: return "reliance_price";
    case Field::OutputValuation: return "output_valuation";
    case Field::OpportunityPrice: return "opportunity_price";
    case Field::SubstitutePrice: return "substitute_price";
    case Field::Notice: return "notice";
  }
  return "?";
}

void check_context(const VictimContext& ctx) {
  const auto& c = ctx.contract;
  auto fail = [](const std::string& why) { throw std::invalid_argument("inconsistent victim context: " + why); };
  if (ctx.victim == ctx.breacher) fail("victim and breacher coincide");
  if (!c.is_party(ctx.victim)) fail("victim '" + ctx.victim.value + "' is not a party");
  if (!c.is_party(ctx.breacher)) fail("breacher '" + ctx.breacher.value + "' is not a party");
  if (ctx.victim_is_buyer != (c.buyer == ctx.victim)) fail("victim side does not match the contract");
  if (ctx.victim_is_buyer && ctx.victim_role == Role::Supplier) fail("a supplier cannot be the buying victim");
  if (!ctx.victim_is_buyer && ctx.victim_role == Role::Consumer) fail("a consumer cannot be the selling victim");
  for (Money m : {c.price, ctx.v, ctx.I_ex, ctx.I_total, ctx.V_total, ctx.V_ex})
    if (m < 0) fail("negative amount");
  for (const auto& m : {ctx.R, ctx.v_out, ctx.P_o, ctx.P_s})
    if (m && *m < 0) fail("negative amount");
}

VictimContext make_victim_context(const Network& net, const Ledger& ledger, ContractId contract,
                                  const AgentId& breacher, bool notice, std::optional<Money> P_o,
                                  std::optional<Money> P_s) {
  const auto& c = ledger.at(contract);
  if (!c.is_party(breacher))
    throw std::invalid_argument("'" + breacher.value + "' is not a party to contract " + std::to_string(contract));
  VictimContext ctx;
  ctx.contract = c;
  ctx.breacher = breacher;
  ctx.victim = c.counterparty(breacher);
  ctx.victim_is_buyer = c.buyer == ctx.victim;
  const auto& spec = net.agent(ctx.victim);
  ctx.victim_role = derive_role(spec);
  ctx.presumable = is_presumable(ledger, net, ctx.victim);
  if (ctx.victim_is_buyer) {
    auto it = spec.input_valuations.find(c.good);
    if (it == spec.input_valuations.end())
      throw std::invalid_argument("'" + ctx.victim.value + "' has no valuation for '" + c.good.value + "'");
    ctx.v = it->second;
  } else {
    ctx.v = spec.output_valuation.value_or(0);
  }
  ctx.I_ex = investments_excluding(ledger, net, ctx.victim, c.good);
  ctx.I_total = investments(ledger, net, ctx.victim);
  ctx.V_total = bid_sum(net, ctx.victim);
  ctx.V_ex = bid_sum_excluding(net, ctx.victim, c.good);
  ctx.R = reliance_price(ledger, net, ctx.victim);
  ctx.v_out = spec.output_valuation;
  ctx.P_o = P_o;
  ctx.P_s = P_s;
  ctx.notice = notice;
  return ctx;
}

Assessment assess_expectation(const VictimContext& ctx) {
  check_context(ctx);
  Reader r(ctx);
  const Money pc = r.price();
  if (const auto& ps = r.P_s()) return substitute_gap(r, pc, *ps);

  if (!r.buyer()) {
    if (r.role() == Role::Supplier) return r.finish(pc - r.v(), "seller victim, supplier");
    if (r.presumable()) return r.finish(clamp0(pc - r.I_ex()), "seller victim, producer, presumable");
    return r.finish(pc - r.v(), "seller victim, producer, not presumable");
  }
  if (r.role() == Role::Consumer) return r.finish(r.v() - pc, "buyer victim, consumer");
  if (r.presumable()) {
    if (const auto& R = r.R()) return r.finish(clamp0(*R - r.I_total()), "buyer victim, producer, presumable, pre-sold");
  }
  return r.finish(r.v() - pc, "buyer victim, producer, otherwise");
}

Assessment assess_opportunity(const VictimContext& ctx) {
  check_context(ctx);
  Reader r(ctx);
  const auto& po = r.P_o();
  if (!po) return r.finish(0, "no opportunity price");
  if (const auto& ps = r.P_s()) return substitute_gap(r, *po, *ps);

  if (!r.buyer()) {
    if (r.role() == Role::Producer && r.presumable())
      return r.finish(clamp0(*po - r.I_ex()), "seller victim, producer, presumable");
    return r.finish(clamp0(*po - r.v()), "seller victim, otherwise");
  }
  if (r.role() == Role::Producer && r.presumable()) {
    if (const auto& R = r.R())
      return r.finish(clamp0(*R - r.I_ex() - *po), "buyer victim, producer, presumable, pre-sold");
  }
  return r.finish(clamp0(r.v() - *po), "buyer victim, otherwise");
}

Money notice_cap(Money reliance, Money contract_price, bool notice) noexcept {
  return notice ? reliance : std::min(reliance, contract_price);
}

Assessment assess_reliance(const VictimContext& ctx, bool capped) {
  check_context(ctx);
  Reader r(ctx);
  Assessment a = [&] {
    if (const auto& ps = r.P_s()) return substitute_gap(r, r.price(), *ps);
    const Role role = r.role();
    if (role == Role::Supplier) return r.finish(0, "supplier victim");
    if (role == Role::Consumer) return r.finish(0, "consumer victim");
    if (!r.buyer()) return r.finish(r.V_total() - r.I_total(), "seller victim, producer");
    if (r.presumable()) {
      if (const auto& R = r.R()) {
        const auto& out = r.v_out();
        if (!out) throw std::invalid_argument("pre-sold producer victim without an output valuation");
        return r.finish(r.V_ex() - r.I_ex() + *R - *out, "buyer victim, producer, presumable, pre-sold");
      }
    }
    return r.finish(r.V_ex() - r.I_ex(), "buyer victim, producer, otherwise");
  }();
  if (!capped) return a;

  Reader cap(ctx);
  const bool notice = cap.notice();
  const Money pc = cap.price();
  Money limited = notice_cap(a.amount, pc, notice);
  auto extra = std::move(cap).finish(0, {}).evidence;
  for (auto f : extra)
    if (std::find(a.evidence.begin(), a.evidence.end(), f) == a.evidence.end()) a.evidence.push_back(f);
  if (limited != a.amount) a.case_label += ", capped at contract price";
  a.amount = limited;
  return a;
}

Assessment assess_party(const PartyDamageSpec& spec, const VictimContext& ctx) {
  if (!is_valid(spec)) throw std::invalid_argument("invalid party damage spec " + to_string(spec));
  return std::visit(overloaded{
                        [&](const FractionOfPrice& f) {
                          check_context(ctx);
                          Reader r(ctx);
                          return r.finish(scale_round_half_up(f.alpha, r.price()), "fraction of contract price");
                        },
                        [&](const FractionOfExpectation& f) {
                          Assessment e = assess_expectation(ctx);
                          e.amount = scale_round_half_up(f.alpha, e.amount);
                          e.case_label = "fraction of expectation (" + e.case_label + ")";
                          return e;
                        },
                        [&](const ConstantDamages& c) {
                          check_context(ctx);
                          return Assessment{c.amount, "constant", {}};
                        },
                    },
                    spec);
}

Money expectation_damages(const VictimContext& ctx) { return assess_expectation(ctx).amount; }
Money opportunity_damages(const VictimContext& ctx) { return assess_opportunity(ctx).amount; }
Money reliance_damages(const VictimContext& ctx) { return assess_reliance(ctx, false).amount; }
Money capped_reliance_damages(const VictimContext& ctx) { return assess_reliance(ctx, true).amount; }
Money party_damages(const PartyDamageSpec& spec, const VictimContext& ctx) { return assess_party(spec, ctx).amount; }

DamageAward compute_award(const RemedyRegime& regime, const VictimContext& ctx) {
  Assessment a = std::visit(overloaded{
                                [&](const Expectation&) { return assess_expectation(ctx); },
                                [&](const OpportunityCost&) { return assess_opportunity(ctx); },
                                [&](const Reliance& rel) { return assess_reliance(ctx, rel.capped); },
                                [&](const PartyDesigned& p) { return assess_party(p.spec, ctx); },
                            },
                            regime);
  return DamageAward{regime, a.amount, std::move(a.evidence), std::move(a.case_label)};
}

std::optional<SubstituteMatch> match_substitute(std::span<const Order> book, const Order& victim_order) {
  std::vector<Order> orders;
  orders.reserve(book.size() + 1);
  std::uint64_t next_seq = 0;
  for (const auto& o : book) {
    if (o.good != victim_order.good || o.agent == victim_order.agent) continue;
    orders.push_back(o);
    next_seq = std::max(next_seq, o.seq + 1);
  }
  Order mine = victim_order;
  mine.seq = next_seq;
  orders.push_back(mine);

  const auto result = clear(victim_order.good, orders);
  if (!result.price) return std::nullopt;
  for (const auto& t : result.trades) {
    if (victim_order.side == Side::Sell && t.seller == victim_order.agent) return SubstituteMatch{*result.price, t.buyer};
    if (victim_order.side == Side::Buy && t.buyer == victim_order.agent) return SubstituteMatch{*result.price, t.seller};
  }
  return std::nullopt;
}

std::optional<Money> find_substitute(std::span<const Order> book, const Order& victim_order) {
  if (auto m = match_substitute(book, victim_order)) return m->price;
  return std::nullopt;
}

}  // namespace remedysim
