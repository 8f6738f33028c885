#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "remedysim/simulator.hpp"

namespace remedysim {

using nlohmann::json;

json to_json(const Contract& c);
json to_json(const VictimContext& ctx);
json to_json(const DamageAward& a);
json to_json(const DisputeRecord& r);

// Inverse of to_json(DisputeRecord); throws std::invalid_argument on a
// malformed record.
DisputeRecord dispute_from_json(const json& j);

// One self-contained JSON object per line, keys sorted, in a fixed record
// order: rounds, contracts, breaches, disputes, decisions, deliveries,
// accounts, summary.
std::string export_jsonl(const RunReport& report);

std::string render_report(const RunReport& report);
std::string render_clearing(const ClearingResult& result, std::span<const Order> orders);
std::string render_dispute(const DisputeRecord& record);

}  // namespace remedysim
