#pragma once

#include <span>
#include <string>
#include <vector>

#include "remedysim/simulator.hpp"

namespace remedysim {

// Runs every scenario to completion. The parallel version distributes whole
// scenarios over OpenMP threads; results land at the input's index, so the
// output never depends on scheduling. The first failure (lowest index) is
// rethrown after all runs finish.
std::vector<RunReport> run_batch(std::span<const Scenario> scenarios);
std::vector<RunReport> run_batch_serial(std::span<const Scenario> scenarios);

enum class SweepAxis { Regime, Info, Policy };
std::string_view to_string(SweepAxis a) noexcept;
SweepAxis parse_axis(std::string_view text);

struct SweepVariant {
  std::string label;
  Scenario scenario;
};

// The scenario re-run along one axis, sorted by label. Regime variants drop
// per-contract regimes so each row is one regime imposed on everybody; policy
// variants apply one policy to every agent.
std::vector<SweepVariant> sweep_variants(const Scenario& base, SweepAxis axis);

struct SweepRow {
  std::string label;
  Money welfare{0};
  std::size_t contracts{0};
  std::size_t breaches{0};
  Money damages{0};
  int propagation_depth{0};
  bool operator==(const SweepRow&) const = default;
};

SweepRow summarize(const std::string& label, const RunReport& report);
std::vector<SweepRow> run_sweep(const Scenario& base, SweepAxis axis, bool parallel = true);
std::string render_sweep(SweepAxis axis, std::span<const SweepRow> rows);

}  // namespace remedysim
