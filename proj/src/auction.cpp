#include "remedysim/auction.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace remedysim {

std::string_view to_string(Side s) noexcept { return s == Side::Buy ? "buy" : "sell"; }

namespace {

void check_book(const GoodId& good, std::span<const Order> orders) {
  if (orders.empty()) throw std::invalid_argument("auction for '" + good.value + "' has no orders");
  std::set<std::uint64_t> seqs;
  std::set<std::pair<AgentId, Side>> sides;
  for (const auto& o : orders) {
    if (o.good != good)
      throw std::invalid_argument("order for '" + o.good.value + "' in auction for '" + good.value + "'");
    if (o.price < 0) throw std::invalid_argument("negative price from '" + o.agent.value + "'");
    if (!seqs.insert(o.seq).second) throw std::invalid_argument("duplicate sequence number " + std::to_string(o.seq));
    if (!sides.emplace(o.agent, o.side).second)
      throw std::invalid_argument("agent '" + o.agent.value + "' has two " + std::string(to_string(o.side)) +
                                  " orders for '" + good.value + "'");
  }
}

// The (M+1)st highest price of the book, or nothing when the book holds fewer
// than M+1 prices.
std::optional<Money> m_plus_first(std::span<const Order> orders, std::size_t m) {
  if (orders.size() < m + 1) return std::nullopt;
  std::vector<Money> prices;
  prices.reserve(orders.size());
  for (const auto& o : orders) prices.push_back(o.price);
  std::nth_element(prices.begin(), prices.begin() + static_cast<std::ptrdiff_t>(m), prices.end(), std::greater<>{});
  return prices[m];
}

}  // namespace

ClearingResult clear(const GoodId& good, std::span<const Order> orders) {
  check_book(good, orders);

  ClearingResult result;
  result.good = good;
  result.sell_count = static_cast<std::size_t>(
      std::count_if(orders.begin(), orders.end(), [](const Order& o) { return o.side == Side::Sell; }));
  result.price = m_plus_first(orders, result.sell_count);
  if (!result.price) return result;
  const Money price = *result.price;

  std::vector<const Order*> asks;
  std::vector<const Order*> bids;
  for (const auto& o : orders) {
    if (o.side == Side::Sell && o.price <= price) asks.push_back(&o);
    if (o.side == Side::Buy && o.price >= price) bids.push_back(&o);
  }
  // Price priority, then earlier submission, then agent id.
  std::sort(asks.begin(), asks.end(), [](const Order* a, const Order* b) {
    return std::tie(a->price, a->seq, a->agent) < std::tie(b->price, b->seq, b->agent);
  });
  std::sort(bids.begin(), bids.end(), [](const Order* a, const Order* b) {
    if (a->price != b->price) return a->price > b->price;
    return std::tie(a->seq, a->agent) < std::tie(b->seq, b->agent);
  });

  const std::size_t n = std::min(asks.size(), bids.size());
  result.trades.reserve(n);
  for (std::size_t i = 0; i < n; ++i) result.trades.push_back({asks[i]->agent, bids[i]->agent});
  return result;
}

std::optional<Money> opportunity_price(const GoodId& good, std::span<const Order> orders, const AgentId& excluded) {
  check_book(good, orders);
  std::vector<Order> remaining;
  std::size_t m = 0;
  std::optional<Side> excluded_side;
  for (const auto& o : orders) {
    if (o.side == Side::Sell) ++m;
    if (o.agent == excluded)
      excluded_side = o.side;
    else
      remaining.push_back(o);
  }
  if (!excluded_side) throw std::invalid_argument("agent '" + excluded.value + "' did not bid on '" + good.value + "'");

  // The victim needs a counterparty on the breacher's side.
  const bool counterparty_left = std::any_of(remaining.begin(), remaining.end(),
                                             [&](const Order& o) { return o.side == *excluded_side; });
  if (!counterparty_left) return std::nullopt;
  return m_plus_first(remaining, m);
}

}  // namespace remedysim
