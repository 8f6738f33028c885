#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "remedysim/types.hpp"

namespace remedysim {

enum class Side { Buy, Sell };

std::string_view to_string(Side s) noexcept;

struct Order {
  AgentId agent;
  GoodId good;
  Side side{Side::Buy};
  Money price{0};
  std::uint64_t seq{0};  // submission order, unique within one auction

  bool operator==(const Order&) const = default;
};

struct Trade {
  AgentId seller;
  AgentId buyer;

  bool operator==(const Trade&) const = default;
};

struct ClearingResult {
  GoodId good;
  std::optional<Money> price;
  std::vector<Trade> trades;
  std::size_t sell_count{0};  // M

  bool operator==(const ClearingResult&) const = default;
};

// (M+1)st price clearing: with M sell orders, the price is the (M+1)st highest
// of all submitted prices. Orders exactly at the price are admitted in seq
// order, then agent id, up to min(#asks <= price, #bids >= price).
// Throws std::invalid_argument on an empty book, mixed goods, negative prices,
// duplicate seq, or two same-side orders from one agent.
ClearingResult clear(const GoodId& good, std::span<const Order> orders);

// Price of the same auction with every order of `excluded` removed, holding M
// at the original sell-order count. Absent when fewer than M+1 prices remain
// or no order is left on the excluded agent's side.
// Throws std::invalid_argument if `excluded` has no order in the book.
std::optional<Money> opportunity_price(const GoodId& good, std::span<const Order> orders,
                                       const AgentId& excluded);

}  // namespace remedysim
