#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "remedysim/types.hpp"

namespace remedysim {

enum class Role { Supplier, Producer, Consumer };

std::string_view to_string(Role r) noexcept;

struct AgentSpec {
  AgentId id;
  std::vector<GoodId> inputs;
  std::map<GoodId, Money> input_valuations;
  std::optional<GoodId> output;
  // Ask the agent submits for its output (a supplier's production cost).
  std::optional<Money> output_valuation;

  bool operator==(const AgentSpec&) const = default;
};

// Supplier iff no inputs, Consumer iff no output, Producer otherwise.
Role derive_role(const AgentSpec& a) noexcept;

// Bipartite graph of goods and agents. Edges are implied by each agent's
// inputs and output. Construction does not validate; see validate_network.
class Network {
public:
  Network() = default;
  Network(std::vector<GoodId> goods, std::vector<AgentSpec> agents);

  const std::vector<GoodId>& goods() const noexcept { return goods_; }
  const std::vector<AgentSpec>& agents() const noexcept { return agents_; }

  bool has_good(const GoodId& g) const;
  const AgentSpec* find_agent(const AgentId& id) const;
  // Throws std::out_of_range for an unknown agent.
  const AgentSpec& agent(const AgentId& id) const;

  bool operator==(const Network& o) const { return goods_ == o.goods_ && agents_ == o.agents_; }

private:
  std::vector<GoodId> goods_;
  std::vector<AgentSpec> agents_;
  std::map<AgentId, std::size_t> agent_index_;
};

struct Violation {
  std::string subject;  // agent or good id
  std::string rule;     // e.g. "consumer arity", "acyclicity"
  std::string detail;

  bool operator==(const Violation&) const = default;
};

struct ValidationVerdict {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationVerdict validate_network(const Network& net);

// Throws std::out_of_range for an unknown agent.
Role role_of(const Network& net, const AgentId& agent);

// Topological order of goods (producer inputs before its output), ties broken
// by good id ascending. Throws std::invalid_argument on a cyclic network.
std::vector<GoodId> clearing_order(const Network& net);

}  // namespace remedysim
