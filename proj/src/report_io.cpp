#include "remedysim/report_io.hpp"

#include <iomanip>
#include <sstream>

#include "remedysim/scenario_io.hpp"

namespace remedysim {

namespace {

json opt(const std::optional<Money>& m) { return m ? json(*m) : json(nullptr); }

std::optional<Money> opt_money(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<Money>();
}

Role parse_role(const std::string& s) {
  if (s == "supplier") return Role::Supplier;
  if (s == "producer") return Role::Producer;
  if (s == "consumer") return Role::Consumer;
  throw std::invalid_argument("unknown role '" + s + "'");
}

ContractState parse_state(const std::string& s) {
  if (s == "active") return ContractState::Active;
  if (s == "violated") return ContractState::Violated;
  if (s == "performed") return ContractState::Performed;
  throw std::invalid_argument("unknown contract state '" + s + "'");
}

Field parse_field(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Field::Notice); ++i)
    if (to_string(static_cast<Field>(i)) == s) return static_cast<Field>(i);
  throw std::invalid_argument("unknown evidence field '" + s + "'");
}

OdrMode parse_mode(const std::string& s) {
  for (auto m : {OdrMode::Imposed, OdrMode::PartySelected, OdrMode::AllRemedies})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown odr mode '" + s + "'");
}

Contract contract_from_json(const json& j) {
  Contract c;
  c.id = j.at("id").get<ContractId>();
  c.seller = AgentId(j.at("seller").get<std::string>());
  c.buyer = AgentId(j.at("buyer").get<std::string>());
  c.good = GoodId(j.at("good").get<std::string>());
  c.price = j.at("price").get<Money>();
  c.t_issue = j.at("t_issue").get<Round>();
  c.t_maturity = j.at("t_maturity").get<Round>();
  c.state = parse_state(j.at("state").get<std::string>());
  if (const auto& b = j.at("breach"); !b.is_null())
    c.breach = BreachEvent{AgentId(b.at("breacher").get<std::string>()), b.at("time").get<Round>(),
                           b.at("notice").get<bool>()};
  return c;
}

VictimContext context_from_json(const json& j) {
  VictimContext ctx;
  ctx.contract = contract_from_json(j.at("contract"));
  ctx.victim = AgentId(j.at("victim").get<std::string>());
  ctx.breacher = AgentId(j.at("breacher").get<std::string>());
  ctx.victim_role = parse_role(j.at("victim_role").get<std::string>());
  ctx.victim_is_buyer = j.at("victim_is_buyer").get<bool>();
  ctx.presumable = j.at("presumable").get<bool>();
  ctx.v = j.at("valuation").get<Money>();
  ctx.I_ex = j.at("investments_excluding").get<Money>();
  ctx.I_total = j.at("investments").get<Money>();
  ctx.V_total = j.at("bid_sum").get<Money>();
  ctx.V_ex = j.at("bid_sum_excluding").get<Money>();
  ctx.R = opt_money(j, "reliance_price");
  ctx.v_out = opt_money(j, "output_valuation");
  ctx.P_o = opt_money(j, "opportunity_price");
  ctx.P_s = opt_money(j, "substitute_price");
  ctx.notice = j.at("notice").get<bool>();
  return ctx;
}

std::string money_or_dash(const std::optional<Money>& m) { return m ? std::to_string(*m) : "-"; }

}  // namespace

json to_json(const Contract& c) {
  json j;
  j["id"] = c.id;
  j["seller"] = c.seller.value;
  j["buyer"] = c.buyer.value;
  j["good"] = c.good.value;
  j["price"] = c.price;
  j["t_issue"] = c.t_issue;
  j["t_maturity"] = c.t_maturity;
  j["state"] = std::string(to_string(c.state));
  if (c.breach)
    j["breach"] = {{"breacher", c.breach->breacher.value}, {"time", c.breach->time}, {"notice", c.breach->notice_given}};
  else
    j["breach"] = nullptr;
  return j;
}

json to_json(const VictimContext& ctx) {
  json j;
  j["contract"] = to_json(ctx.contract);
  j["victim"] = ctx.victim.value;
  j["breacher"] = ctx.breacher.value;
  j["victim_role"] = std::string(to_string(ctx.victim_role));
  j["victim_is_buyer"] = ctx.victim_is_buyer;
  j["presumable"] = ctx.presumable;
  j["valuation"] = ctx.v;
  j["investments_excluding"] = ctx.I_ex;
  j["investments"] = ctx.I_total;
  j["bid_sum"] = ctx.V_total;
  j["bid_sum_excluding"] = ctx.V_ex;
  j["reliance_price"] = opt(ctx.R);
  j["output_valuation"] = opt(ctx.v_out);
  j["opportunity_price"] = opt(ctx.P_o);
  j["substitute_price"] = opt(ctx.P_s);
  j["notice"] = ctx.notice;
  return j;
}

json to_json(const DamageAward& a) {
  json evidence = json::array();
  for (auto f : a.evidence) evidence.push_back(std::string(to_string(f)));
  return {{"regime", to_string(a.regime)}, {"amount", a.amount}, {"case", a.case_label}, {"evidence", evidence}};
}

json to_json(const DisputeRecord& r) {
  json awards = json::array();
  for (const auto& a : r.awards) awards.push_back(to_json(a));
  return {{"contract", to_json(r.contract)},
          {"breacher", r.breacher.value},
          {"t_breach", r.t_breach},
          {"notice", r.notice},
          {"mode", std::string(to_string(r.mode))},
          {"imposed", r.imposed ? json(to_string(*r.imposed)) : json(nullptr)},
          {"context", to_json(r.context)},
          {"awards", awards},
          {"substitute_price", opt(r.substitute_price)}};
}

DisputeRecord dispute_from_json(const json& j) {
  try {
    DisputeRecord r;
    r.contract = contract_from_json(j.at("contract"));
    r.breacher = AgentId(j.at("breacher").get<std::string>());
    r.t_breach = j.at("t_breach").get<Round>();
    r.notice = j.at("notice").get<bool>();
    r.mode = parse_mode(j.at("mode").get<std::string>());
    if (!j.at("imposed").is_null()) r.imposed = parse_regime(j.at("imposed").get<std::string>());
    r.context = context_from_json(j.at("context"));
    for (const auto& a : j.at("awards")) {
      DamageAward award;
      award.regime = parse_regime(a.at("regime").get<std::string>());
      award.amount = a.at("amount").get<Money>();
      award.case_label = a.at("case").get<std::string>();
      for (const auto& f : a.at("evidence")) award.evidence.push_back(parse_field(f.get<std::string>()));
      r.awards.push_back(std::move(award));
    }
    r.substitute_price = opt_money(j, "substitute_price");
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed dispute record: ") + e.what());
  }
}

std::string export_jsonl(const RunReport& report) {
  std::ostringstream out;
  auto emit = [&](const char* kind, json j) {
    j["record"] = kind;
    out << j.dump() << '\n';
  };
  for (const auto& r : report.rounds)
    emit("round", {{"round", r.round},
                   {"welfare", r.welfare},
                   {"contracts_signed", r.contracts_signed},
                   {"deliveries", r.deliveries},
                   {"breaches", r.breaches},
                   {"damages", r.damages},
                   {"propagation_depth", r.propagation_depth}});
  for (const auto& c : report.ledger.contracts()) emit("contract", to_json(c));
  for (std::size_t i = 0; i < report.breaches.size(); ++i) {
    const auto& b = report.breaches[i];
    emit("breach", {{"index", i},
                    {"contract", b.contract},
                    {"breacher", b.breacher.value},
                    {"victim", b.victim.value},
                    {"round", b.round},
                    {"cause", std::string(to_string(b.cause))},
                    {"caused_by", b.caused_by ? json(*b.caused_by) : json(nullptr)},
                    {"depth", b.depth},
                    {"award", b.award},
                    {"transferred", b.transferred},
                    {"substitute", b.substitute ? json(*b.substitute) : json(nullptr)}});
  }
  for (const auto& d : report.disputes) emit("dispute", to_json(d));
  for (const auto& d : report.decisions)
    emit("decision", {{"round", d.round},
                      {"contract", d.contract},
                      {"agent", d.agent.value},
                      {"action", std::string(to_string(d.decision.action))},
                      {"estimated_gain", d.decision.estimated_gain},
                      {"estimated_damages", d.decision.estimated_damages},
                      {"basis", std::string(to_string(d.decision.basis))},
                      {"exact_damages", d.exact_damages}});
  for (const auto& d : report.deliveries)
    emit("delivery", {{"round", d.round},
                      {"good", d.good.value},
                      {"contract", d.contract ? json(*d.contract) : json(nullptr)},
                      {"seller", d.seller ? json(d.seller->value) : json(nullptr)},
                      {"buyer", d.buyer ? json(d.buyer->value) : json(nullptr)},
                      {"price", d.price},
                      {"seller_cost", d.seller_cost},
                      {"buyer_value", d.buyer_value}});
  for (const auto& a : report.accounts)
    emit("account", {{"agent", a.agent.value},
                     {"sales", a.sales},
                     {"purchases", a.purchases},
                     {"damages_received", a.damages_received},
                     {"damages_paid", a.damages_paid},
                     {"consumption", a.consumption},
                     {"production", a.production},
                     {"payoff", a.payoff()}});
  emit("summary", {{"welfare", report.total_welfare()},
                   {"breaches", report.breaches.size()},
                   {"damages", report.total_damages()},
                   {"propagation_depth", breach_propagation_depth(report)},
                   {"contracts", report.ledger.contracts().size()}});
  return out.str();
}

std::string render_report(const RunReport& report) {
  std::ostringstream out;
  out << "round  welfare  signed  delivered  breaches  damages  depth\n";
  for (const auto& r : report.rounds)
    out << std::setw(5) << r.round << std::setw(9) << r.welfare << std::setw(8) << r.contracts_signed << std::setw(11)
        << r.deliveries << std::setw(10) << r.breaches << std::setw(9) << r.damages << std::setw(7)
        << r.propagation_depth << '\n';

  out << "\ncontracts\n";
  out << "   id  seller      buyer       good        price  issue  maturity  state\n";
  for (const auto& c : report.ledger.contracts())
    out << std::setw(5) << c.id << "  " << std::left << std::setw(12) << c.seller.value << std::setw(12)
        << c.buyer.value << std::setw(10) << c.good.value << std::right << std::setw(7) << c.price << std::setw(7)
        << c.t_issue << std::setw(10) << c.t_maturity << "  " << to_string(c.state) << '\n';

  if (!report.breaches.empty()) {
    out << "\nbreaches\n";
    for (const auto& b : report.breaches)
      out << "  contract " << b.contract << ": " << b.breacher << " -> " << b.victim << " in round " << b.round << " ("
          << to_string(b.cause) << "), award " << b.award << ", paid " << b.transferred << ", depth " << b.depth
          << '\n';
  }

  out << "\naccounts\n";
  out << "  agent        payoff\n";
  for (const auto& a : report.accounts)
    out << "  " << std::left << std::setw(10) << a.agent.value << std::right << std::setw(9) << a.payoff() << '\n';

  out << "\nwelfare " << report.total_welfare() << ", breaches " << report.breaches.size() << ", damages "
      << report.total_damages() << ", max propagation depth " << breach_propagation_depth(report) << '\n';
  return out.str();
}

std::string render_clearing(const ClearingResult& result, std::span<const Order> orders) {
  std::ostringstream out;
  out << "good " << result.good << ": " << orders.size() << " orders, M = " << result.sell_count << '\n';
  out << "  seq  agent       side   price\n";
  for (const auto& o : orders)
    out << std::setw(5) << o.seq << "  " << std::left << std::setw(12) << o.agent.value << std::setw(5)
        << to_string(o.side) << std::right << std::setw(8) << o.price << '\n';
  out << "price " << money_or_dash(result.price) << '\n';
  for (const auto& t : result.trades) out << "  trade " << t.seller << " -> " << t.buyer << '\n';
  if (result.trades.empty()) out << "  no trades\n";
  return out.str();
}

std::string render_dispute(const DisputeRecord& r) {
  std::ostringstream out;
  const auto& c = r.contract;
  out << "contract " << c.id << ": <" << c.seller << ", " << c.buyer << ", " << c.good << ", " << c.price << ", "
      << c.t_issue << ", " << c.t_maturity << ">\n";
  out << "breacher " << r.breacher << " at round " << r.t_breach << ", victim " << r.context.victim << " ("
      << to_string(r.context.victim_role)
      << (r.context.victim_role == Role::Producer ? (r.context.presumable ? ", presumable" : ", not presumable") : "") << "), notice "
      << (r.notice ? "yes" : "no") << ", mode " << to_string(r.mode);
  if (r.imposed) out << ", imposed " << to_string(*r.imposed);
  out << '\n';
  out << "opportunity price " << money_or_dash(r.context.P_o) << ", substitute price " << money_or_dash(r.substitute_price)
      << '\n';
  for (const auto& a : r.awards) {
    out << "  " << std::left << std::setw(34) << to_string(a.regime) << std::right << std::setw(6) << a.amount << "  "
        << a.case_label << '\n';
  }
  return out.str();
}

}  // namespace remedysim
