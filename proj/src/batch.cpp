#include "remedysim/batch.hpp"

#include <algorithm>
#include <exception>
#include <iomanip>
#include <sstream>

namespace remedysim {

std::vector<RunReport> run_batch_serial(std::span<const Scenario> scenarios) {
  std::vector<RunReport> out;
  out.reserve(scenarios.size());
  for (const auto& s : scenarios) out.push_back(run(s));
  return out;
}

std::vector<RunReport> run_batch(std::span<const Scenario> scenarios) {
  const auto n = static_cast<std::ptrdiff_t>(scenarios.size());
  std::vector<RunReport> out(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = run(scenarios[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string_view to_string(SweepAxis a) noexcept {
  switch (a) {
    case SweepAxis::Regime: return "regime";
    case SweepAxis::Info: return "info";
    case SweepAxis::Policy: return "policy";
  }
  return "?";
}

SweepAxis parse_axis(std::string_view text) {
  for (auto a : {SweepAxis::Regime, SweepAxis::Info, SweepAxis::Policy})
    if (to_string(a) == text) return a;
  throw std::invalid_argument("unknown sweep axis '" + std::string(text) + "'");
}

namespace {

bool base_capped(const RemedyRegime& r) {
  const auto* rel = std::get_if<Reliance>(&r);
  return rel && rel->capped;
}

std::string policy_label(const AgentPolicy& p) {
  std::ostringstream s;
  s << "reliance=" << to_string(p.reliance) << " propensity=" << to_string(p.breach_propensity)
    << " shares=" << (p.shares_info ? "yes" : "no") << " beta=" << to_string(p.risk_attitude);
  return s.str();
}

}  // namespace

std::vector<SweepVariant> sweep_variants(const Scenario& base, SweepAxis axis) {
  std::vector<SweepVariant> out;
  switch (axis) {
    case SweepAxis::Regime: {
      PartyDamageSpec spec = base.party_spec.value_or(FractionOfPrice{Rational(1, 2)});
      if (const auto* p = std::get_if<PartyDesigned>(&base.regime)) spec = p->spec;
      std::vector<RemedyRegime> regimes{Expectation{}, OpportunityCost{}, Reliance{base_capped(base.regime)},
                                        PartyDesigned{spec}};
      for (auto& r : regimes) {
        Scenario s = base;
        s.regime = r;
        s.contract_regimes.clear();
        s.odr_mode = OdrMode::Imposed;
        out.push_back({to_string(r), std::move(s)});
      }
      break;
    }
    case SweepAxis::Info:
      for (auto level : {InfoSharingLevel::NoShare, InfoSharingLevel::Neighbor, InfoSharingLevel::Broadcast}) {
        Scenario s = base;
        s.info = level;
        out.push_back({std::string(to_string(level)), std::move(s)});
      }
      break;
    case SweepAxis::Policy:
      for (auto reliance : {RelianceLevel::Low, RelianceLevel::High})
        for (auto propensity : {Rational(0), Rational(1, 2)})
          for (bool shares : {false, true})
            for (auto beta : {Rational(0), Rational(1)}) {
              Scenario s = base;
              AgentPolicy p = base.default_policy;
              p.reliance = reliance;
              p.breach_propensity = propensity;
              p.shares_info = shares;
              p.risk_attitude = beta;
              s.default_policy = p;
              s.policies.clear();
              out.push_back({policy_label(p), std::move(s)});
            }
      break;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
  return out;
}

SweepRow summarize(const std::string& label, const RunReport& report) {
  return SweepRow{label,
                  report.total_welfare(),
                  report.ledger.contracts().size(),
                  report.breaches.size(),
                  report.total_damages(),
                  breach_propagation_depth(report)};
}

std::vector<SweepRow> run_sweep(const Scenario& base, SweepAxis axis, bool parallel) {
  auto variants = sweep_variants(base, axis);
  std::vector<Scenario> scenarios;
  for (const auto& v : variants) scenarios.push_back(v.scenario);
  auto reports = parallel ? run_batch(scenarios) : run_batch_serial(scenarios);
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < variants.size(); ++i) rows.push_back(summarize(variants[i].label, reports[i]));
  return rows;
}

std::string render_sweep(SweepAxis axis, std::span<const SweepRow> rows) {
  std::size_t width = to_string(axis).size();
  for (const auto& r : rows) width = std::max(width, r.label.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << to_string(axis) << std::right
      << "  welfare  contracts  breaches  damages  depth\n";
  for (const auto& r : rows)
    out << std::left << std::setw(static_cast<int>(width)) << r.label << std::right << std::setw(9) << r.welfare
        << std::setw(11) << r.contracts << std::setw(10) << r.breaches << std::setw(9) << r.damages << std::setw(7)
        << r.propagation_depth << '\n';
  return out.str();
}

}  // namespace remedysim
