#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "remedysim/scenario_io.hpp"

namespace testing {

using namespace remedysim;

inline std::string fixture(const std::string& name) { return std::string(SCENARIO_DIR) + "/" + name; }

inline Order ask(const std::string& agent, Money price, std::uint64_t seq, const std::string& good = "g") {
  return Order{AgentId(agent), GoodId(good), Side::Sell, price, seq};
}

inline Order bid(const std::string& agent, Money price, std::uint64_t seq, const std::string& good = "g") {
  return Order{AgentId(agent), GoodId(good), Side::Buy, price, seq};
}

// The Fig. 2 book on g5.
inline std::vector<Order> fig2_book() {
  return {ask("s5", 11, 0, "g5"), ask("s6", 13, 1, "g5"), bid("p5", 12, 2, "g5"), bid("c3", 15, 3, "g5")};
}

// Textbook (M+1)st price: sort every price descending and take index M.
inline std::optional<Money> oracle_price(const std::vector<Order>& orders) {
  std::vector<Money> prices;
  std::size_t m = 0;
  for (const auto& o : orders) {
    prices.push_back(o.price);
    if (o.side == Side::Sell) ++m;
  }
  if (prices.size() <= m) return std::nullopt;
  std::sort(prices.rbegin(), prices.rend());
  return prices[m];
}

}  // namespace testing
