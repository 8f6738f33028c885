#include "remedysim/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "remedysim/batch.hpp"
#include "remedysim/report_io.hpp"
#include "remedysim/scenario_io.hpp"

namespace remedysim {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

long long to_integer(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("bad " + what + " '" + text + "'");
}

bool to_flag(const std::string& text) {
  if (text == "1" || text == "yes" || text == "true" || text == "notice") return true;
  if (text == "0" || text == "no" || text == "false" || text.empty()) return false;
  throw UsageError("bad notice flag '" + text + "'");
}

Scenario load_valid(const std::string& path) {
  Scenario s = load_scenario(path);
  validate_scenario(s);
  return s;
}

void write_export(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contract remedies in a networked auction market", "remedysim"};
  app.require_subcommand(1);

  std::string file;
  bool jsonl = false;
  std::string export_path;

  auto* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("scenario", file, "scenario file")->required();

  std::string good;
  Round round = 0;
  auto* clear_cmd = app.add_subcommand("clear", "show one good's auction");
  clear_cmd->add_option("scenario", file, "scenario file")->required();
  clear_cmd->add_option("--good", good, "good to show")->required();
  clear_cmd->add_option("--round", round, "round (default 0)");

  std::string breach;
  auto* remedies = app.add_subcommand("remedies", "dispute record for a breach");
  remedies->add_option("scenario", file, "scenario file")->required();
  remedies->add_option("--breach", breach, "contract,breacher,round,notice")->required();
  remedies->add_flag("--jsonl", jsonl, "print the record as JSON");

  std::optional<std::uint64_t> seed;
  auto* simulate = app.add_subcommand("simulate", "run the scenario");
  simulate->add_option("scenario", file, "scenario file")->required();
  simulate->add_option("--seed", seed, "override the scenario seed");
  simulate->add_flag("--jsonl", jsonl, "print the machine export instead of tables");
  simulate->add_option("--export", export_path, "also write the machine export to a file");

  std::string axis;
  bool serial = false;
  auto* sweep = app.add_subcommand("sweep", "compare runs along one axis");
  sweep->add_option("scenario", file, "scenario file")->required();
  sweep->add_option("--axis", axis, "regime | info | policy")->required();
  sweep->add_flag("--serial", serial, "run variants one after another");

  std::string offer, shock;
  auto* suggest = app.add_subcommand("suggest", "breaches that leave both parties better off");
  suggest->add_option("scenario", file, "scenario file")->required();
  auto* offer_opt = suggest->add_option("--offer", offer, "agent:price outside offer");
  auto* shock_opt = suggest->add_option("--shock", shock, "good:delta cost shock");
  offer_opt->excludes(shock_opt);
  suggest->add_option("--round", round, "round of the contingency (default 0)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (validate->parsed()) {
      Scenario s = load_scenario(file);
      auto verdict = validate_network(s.network);
      if (!verdict.ok()) {
        for (const auto& v : verdict.violations) out << v.rule << " (" << v.subject << "): " << v.detail << '\n';
        out << "invalid\n";
        return kSemantic;
      }
      validate_scenario(s);
      out << "valid: " << s.network.goods().size() << " goods, " << s.network.agents().size() << " agents\n";
      return kOk;
    }

    if (clear_cmd->parsed()) {
      Scenario s = load_valid(file);
      if (!s.network.has_good(GoodId(good))) throw std::invalid_argument("unknown good '" + good + "'");
      if (round < 0 || round >= s.rounds) throw std::invalid_argument("round outside the run");
      Market m(s);
      m.form_contracts(round);
      auto result = m.clearing(round, GoodId(good));
      if (!result) {
        out << "good " << good << ": no orders in round " << round << '\n';
        return kOk;
      }
      out << render_clearing(*result, m.book(round, GoodId(good)));
      return kOk;
    }

    if (remedies->parsed()) {
      auto parts = split(breach, ',');
      if (parts.size() < 3 || parts.size() > 4) throw UsageError("--breach expects contract,breacher,round[,notice]");
      const auto id = to_integer(parts[0], "contract id");
      const auto t = static_cast<Round>(to_integer(parts[2], "round"));
      const bool notice = parts.size() == 4 && to_flag(parts[3]);
      Scenario s = load_valid(file);
      Market m(s);
      m.form_contracts(t);
      if (id < 0 || static_cast<std::size_t>(id) >= m.ledger().contracts().size())
        throw std::invalid_argument("unknown contract " + parts[0]);
      auto record = m.dispute_for(static_cast<ContractId>(id), AgentId(parts[1]), t, notice);
      if (jsonl)
        out << to_json(record).dump() << '\n';
      else
        out << render_dispute(record);
      return kOk;
    }

    if (simulate->parsed()) {
      Scenario s = load_valid(file);
      if (seed) s.seed = *seed;
      auto report = run(s);
      const auto machine = export_jsonl(report);
      if (!export_path.empty()) write_export(export_path, machine);
      out << (jsonl ? machine : render_report(report));
      return kOk;
    }

    if (sweep->parsed()) {
      const auto a = parse_axis(axis);
      Scenario s = load_valid(file);
      auto rows = run_sweep(s, a, !serial);
      out << render_sweep(a, rows);
      return kOk;
    }

    if (suggest->parsed()) {
      if (offer.empty() == shock.empty()) throw UsageError("give exactly one of --offer or --shock");
      auto parts = split(offer.empty() ? shock : offer, ':');
      if (parts.size() != 2) throw UsageError("contingency must look like name:amount");
      Perturbation p;
      p.time = round;
      const Money amount = to_integer(parts[1], "amount");
      if (!offer.empty())
        p.kind = FortunateOffer{AgentId(parts[0]), amount};
      else
        p.kind = UnfortunateShock{GoodId(parts[0]), amount};
      Scenario s = load_valid(file);
      if (round < 0 || round >= s.rounds) throw std::invalid_argument("round outside the run");
      if (!offer.empty() && !s.network.find_agent(AgentId(parts[0])))
        throw std::invalid_argument("unknown agent '" + parts[0] + "'");
      if (!shock.empty() && !s.network.has_good(GoodId(parts[0])))
        throw std::invalid_argument("unknown good '" + parts[0] + "'");
      Market m(s);
      m.form_contracts(round);
      auto suggestions = m.suggest_pairs(p);
      if (suggestions.empty()) out << "no mutually beneficial breach\n";
      for (const auto& b : suggestions)
        out << "contract " << b.contract << ": " << b.breacher << " breaches, pays " << b.damages << " to " << b.victim
            << "; breacher gains " << b.breacher_gain << ", victim gains " << b.victim_gain << '\n';
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ScenarioError& e) {
    err << "semantic error: " << e.what() << '\n';
    return kSemantic;
  } catch (const std::invalid_argument& e) {
    err << "semantic error: " << e.what() << '\n';
    return kSemantic;
  } catch (const std::out_of_range& e) {
    err << "semantic error: " << e.what() << '\n';
    return kSemantic;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace remedysim
