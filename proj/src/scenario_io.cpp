#include "remedysim/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace remedysim {

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

template <class T = std::int64_t>
T parse_integer(std::string_view s, const char* what) {
  T v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string("expected an integer ") + what + ", got '" + std::string(s) + "'");
  return v;
}

bool parse_flag(std::string_view s, std::string_view yes, std::string_view no) {
  if (s == yes) return true;
  if (s == no) return false;
  throw std::invalid_argument("expected '" + std::string(yes) + "' or '" + std::string(no) + "', got '" +
                              std::string(s) + "'");
}

std::string join(const std::vector<std::string>& toks, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < toks.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += toks[i];
  }
  return out;
}

std::pair<GoodId, Money> parse_valued_good(const std::string& tok) {
  auto eq = tok.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected <good>=<value>, got '" + tok + "'");
  return {GoodId(tok.substr(0, eq)), parse_integer(std::string_view(tok).substr(eq + 1), "valuation")};
}

AgentSpec parse_agent(const std::vector<std::string>& toks) {
  AgentSpec a;
  a.id = AgentId(toks[0]);
  enum { None, In, Out } mode = None;
  bool saw_out = false;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto& t = toks[i];
    if (t == "in") {
      mode = In;
      continue;
    }
    if (t == "out") {
      if (saw_out) throw std::invalid_argument("agent '" + toks[0] + "' has more than one 'out'");
      saw_out = true;
      mode = Out;
      continue;
    }
    auto [good, value] = parse_valued_good(t);
    if (mode == In) {
      a.inputs.push_back(good);
      if (!a.input_valuations.emplace(good, value).second)
        throw std::invalid_argument("input '" + good.value + "' listed twice");
    } else if (mode == Out) {
      if (a.output) throw std::invalid_argument("agent '" + toks[0] + "' has more than one output");
      a.output = good;
      a.output_valuation = value;
    } else {
      throw std::invalid_argument("expected 'in' or 'out' before '" + t + "'");
    }
  }
  return a;
}

void apply_policy_key(AgentPolicy& p, const std::string& tok) {
  auto eq = tok.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + tok + "'");
  const std::string key = tok.substr(0, eq);
  const std::string value = tok.substr(eq + 1);
  if (key == "reliance") {
    p.reliance = parse_flag(value, "high", "low") ? RelianceLevel::High : RelianceLevel::Low;
  } else if (key == "propensity") {
    p.breach_propensity = parse_rational(value);
  } else if (key == "shares") {
    p.shares_info = parse_flag(value, "yes", "no");
  } else if (key == "beta") {
    p.risk_attitude = parse_rational(value);
  } else if (key == "notice") {
    p.gives_notice = parse_flag(value, "yes", "no");
  } else {
    throw std::invalid_argument("unknown policy key '" + key + "'");
  }
}

std::string render_policy(const AgentPolicy& p) {
  std::ostringstream out;
  out << "reliance=" << to_string(p.reliance) << " propensity=" << to_string(p.breach_propensity)
      << " shares=" << (p.shares_info ? "yes" : "no") << " beta=" << to_string(p.risk_attitude)
      << " notice=" << (p.gives_notice ? "yes" : "no");
  return out.str();
}

OdrMode parse_odr(std::string_view s) {
  if (s == "imposed") return OdrMode::Imposed;
  if (s == "party") return OdrMode::PartySelected;
  if (s == "evidence") return OdrMode::AllRemedies;
  throw std::invalid_argument("unknown odr mode '" + std::string(s) + "'");
}

}  // namespace

PartyDamageSpec parse_party_spec(std::string_view text) {
  auto toks = split(text);
  if (toks.size() != 2) throw std::invalid_argument("party damages need a kind and a value");
  if (toks[0] == "fraction-price") return FractionOfPrice{parse_rational(toks[1])};
  if (toks[0] == "fraction-expectation") return FractionOfExpectation{parse_rational(toks[1])};
  if (toks[0] == "constant") return ConstantDamages{parse_integer(toks[1], "amount")};
  throw std::invalid_argument("unknown party damage kind '" + toks[0] + "'");
}

RemedyRegime parse_regime(std::string_view text) {
  auto toks = split(text);
  if (toks.empty()) throw std::invalid_argument("missing regime");
  const auto& head = toks[0];
  if (head == "party") return PartyDesigned{parse_party_spec(join(toks, 1))};
  if (toks.size() != 1) throw std::invalid_argument("unexpected text after regime '" + head + "'");
  if (head == "expectation") return Expectation{};
  if (head == "opportunity") return OpportunityCost{};
  if (head == "reliance") return Reliance{false};
  if (head == "reliance-capped") return Reliance{true};
  throw std::invalid_argument("unknown regime '" + head + "'");
}

InfoSharingLevel parse_info_level(std::string_view text) {
  if (text == "none") return InfoSharingLevel::NoShare;
  if (text == "neighbor") return InfoSharingLevel::Neighbor;
  if (text == "broadcast") return InfoSharingLevel::Broadcast;
  throw std::invalid_argument("unknown info level '" + std::string(text) + "'");
}

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::vector<GoodId> goods;
  std::vector<AgentSpec> agents;
  std::vector<std::pair<AgentId, std::vector<std::string>>> policy_lines;
  std::string section;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto toks = split(raw);
    if (toks.empty()) continue;
    try {
      if (toks[0].front() == '[') {
        if (toks.size() != 1 || toks[0].back() != ']') throw std::invalid_argument("malformed section header");
        section = toks[0].substr(1, toks[0].size() - 2);
        if (section != "goods" && section != "agents" && section != "policies" && section != "market" &&
            section != "contract_regimes" && section != "events")
          throw std::invalid_argument("unknown section '" + section + "'");
        continue;
      }
      if (section.empty()) throw std::invalid_argument("content before the first section header");

      if (section == "goods") {
        for (const auto& t : toks) goods.emplace_back(t);
      } else if (section == "agents") {
        agents.push_back(parse_agent(toks));
      } else if (section == "policies") {
        std::vector<std::string> keys(toks.begin() + 1, toks.end());
        AgentPolicy probe;
        for (const auto& k : keys) apply_policy_key(probe, k);
        if (toks[0] == "default")
          s.default_policy = probe;
        else
          policy_lines.emplace_back(AgentId(toks[0]), std::move(keys));
      } else if (section == "market") {
        const auto& key = toks[0];
        auto need = [&](std::size_t n) {
          if (toks.size() != n) throw std::invalid_argument("'" + key + "' takes " + std::to_string(n - 1) + " value(s)");
        };
        if (key == "regime") {
          s.regime = parse_regime(join(toks, 1));
        } else if (key == "party_spec") {
          s.party_spec = parse_party_spec(join(toks, 1));
        } else if (key == "info") {
          need(2);
          s.info = parse_info_level(toks[1]);
        } else if (key == "odr") {
          need(2);
          s.odr_mode = parse_odr(toks[1]);
        } else if (key == "rounds") {
          need(2);
          s.rounds = static_cast<Round>(parse_integer(toks[1], "round count"));
        } else if (key == "maturity_lag") {
          need(2);
          s.maturity_lag = static_cast<Round>(parse_integer(toks[1], "maturity lag"));
        } else if (key == "substitutes") {
          need(2);
          s.substitutes = parse_flag(toks[1], "on", "off");
        } else if (key == "seed") {
          need(2);
          s.seed = parse_integer<std::uint64_t>(toks[1], "seed");
        } else {
          throw std::invalid_argument("unknown market key '" + key + "'");
        }
      } else if (section == "contract_regimes") {
        auto id = parse_integer(toks[0], "contract id");
        if (id < 0) throw std::invalid_argument("negative contract id");
        if (!s.contract_regimes.emplace(static_cast<ContractId>(id), parse_regime(join(toks, 1))).second)
          throw std::invalid_argument("contract " + toks[0] + " assigned twice");
      } else if (section == "events") {
        if (toks.size() != 4) throw std::invalid_argument("event lines are: <round> <kind> <target> <amount>");
        Perturbation p;
        p.time = static_cast<Round>(parse_integer(toks[0], "round"));
        const Money amount = parse_integer(toks[3], "amount");
        if (toks[1] == "fortunate")
          p.kind = FortunateOffer{AgentId(toks[2]), amount};
        else if (toks[1] == "unfortunate")
          p.kind = UnfortunateShock{GoodId(toks[2]), amount};
        else
          throw std::invalid_argument("unknown event kind '" + toks[1] + "'");
        s.events.push_back(std::move(p));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }

  // Agent lines refine the default, wherever it appears in the section.
  for (const auto& [agent, keys] : policy_lines) {
    AgentPolicy p = s.default_policy;
    for (const auto& k : keys) apply_policy_key(p, k);
    s.policies[agent] = p;
  }
  s.network = Network(std::move(goods), std::move(agents));
  return s;
}

std::string render_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "[goods]\n";
  for (const auto& g : s.network.goods()) out << g << '\n';

  out << "\n[agents]\n";
  for (const auto& a : s.network.agents()) {
    out << a.id;
    if (!a.inputs.empty()) {
      out << " in";
      for (const auto& g : a.inputs) out << ' ' << g << '=' << a.input_valuations.at(g);
    }
    if (a.output) out << " out " << *a.output << '=' << a.output_valuation.value_or(0);
    out << '\n';
  }

  out << "\n[policies]\n";
  out << "default " << render_policy(s.default_policy) << '\n';
  for (const auto& [agent, p] : s.policies) out << agent << ' ' << render_policy(p) << '\n';

  out << "\n[market]\n";
  out << "regime " << to_string(s.regime) << '\n';
  if (s.party_spec) out << "party_spec " << to_string(*s.party_spec) << '\n';
  out << "info " << to_string(s.info) << '\n';
  out << "odr " << to_string(s.odr_mode) << '\n';
  out << "rounds " << s.rounds << '\n';
  out << "maturity_lag " << s.maturity_lag << '\n';
  out << "substitutes " << (s.substitutes ? "on" : "off") << '\n';
  out << "seed " << s.seed << '\n';

  if (!s.contract_regimes.empty()) {
    out << "\n[contract_regimes]\n";
    for (const auto& [id, r] : s.contract_regimes) out << id << ' ' << to_string(r) << '\n';
  }

  if (!s.events.empty()) {
    out << "\n[events]\n";
    for (const auto& e : s.events) {
      out << e.time << ' ';
      if (const auto* u = std::get_if<UnfortunateShock>(&e.kind))
        out << "unfortunate " << u->good << ' ' << u->delta << '\n';
      else {
        const auto& f = std::get<FortunateOffer>(e.kind);
        out << "fortunate " << f.agent << ' ' << f.offer << '\n';
      }
    }
  }
  return out.str();
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace remedysim
