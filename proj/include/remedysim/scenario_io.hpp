#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "remedysim/simulator.hpp"

namespace remedysim {

// Line-oriented scenario text. Sections are introduced by "[name]" headers;
// '#' starts a comment.
//
//   [goods]           g5 g6 ...
//   [agents]          <id> [in <good>=<value> ...] [out <good>=<value>]
//   [policies]        default|<agent> reliance=low|high propensity=<q>
//                     shares=yes|no beta=<q> notice=yes|no
//   [market]          regime <regime> | party_spec <spec> | info none|neighbor|broadcast
//                     odr imposed|party|evidence | rounds <n> | maturity_lag <n>
//                     substitutes on|off | seed <n>
//   [contract_regimes] <contract-id> <regime>
//   [events]          <round> fortunate <agent> <offer>
//                     <round> unfortunate <good> <delta>
//
// <regime> is expectation | opportunity | reliance | reliance-capped |
// party <spec>; <spec> is fraction-price <q> | fraction-expectation <q> |
// constant <money>. Unknown sections and keys are rejected.
//
// Throws ParseError carrying the offending line number. The result is not
// validated; see validate_scenario.
Scenario parse_scenario(std::string_view text);

std::string render_scenario(const Scenario& s);

// Reads and parses a file; throws std::runtime_error if it cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

RemedyRegime parse_regime(std::string_view text);
PartyDamageSpec parse_party_spec(std::string_view text);
InfoSharingLevel parse_info_level(std::string_view text);

}  // namespace remedysim
