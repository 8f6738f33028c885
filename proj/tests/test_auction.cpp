#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace testing;

TEST_CASE("Fig. 2 book clears at 12 with one trade") {
  auto r = clear(GoodId("g5"), fig2_book());
  CHECK(r.price == 12);
  CHECK(r.sell_count == 2);
  REQUIRE(r.trades.size() == 1);
  CHECK(r.trades[0] == Trade{AgentId("s5"), AgentId("c3")});
}

TEST_CASE("marginal and empty clearings") {
  auto marginal = clear(GoodId("g"), std::vector{ask("a", 5, 0), bid("b", 5, 1)});
  CHECK(marginal.price == 5);
  CHECK(marginal.trades.size() == 1);

  auto empty = clear(GoodId("g"), std::vector{ask("a", 10, 0), bid("b", 8, 1)});
  CHECK(empty.price == 8);
  CHECK(empty.trades.empty());

  auto sellers_only = clear(GoodId("g"), std::vector{ask("a", 10, 0)});
  CHECK(!sellers_only.price);
}

TEST_CASE("malformed books are rejected") {
  CHECK_THROWS_AS(clear(GoodId("g"), std::vector<Order>{}), std::invalid_argument);
  CHECK_THROWS_AS(clear(GoodId("g"), std::vector{ask("a", 1, 0), bid("b", 2, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(clear(GoodId("g"), std::vector{ask("a", -1, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(clear(GoodId("g"), std::vector{ask("a", 1, 0), ask("a", 2, 1)}), std::invalid_argument);
  CHECK_THROWS_AS(clear(GoodId("g"), std::vector{ask("a", 1, 0, "h")}), std::invalid_argument);
}

TEST_CASE("clearing agrees with the sorted-price oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> count(1, 7);
  std::uniform_int_distribution<Money> price(0, 20);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Order> book;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
      const auto id = "a" + std::to_string(k);
      book.push_back(rng() % 2 ? ask(id, price(rng), k) : bid(id, price(rng), k));
    }
    auto r = clear(GoodId("g"), book);
    CHECK(r.price == oracle_price(book));
    if (!r.price) continue;
    const Money p = *r.price;
    std::size_t asks_in = 0, bids_in = 0;
    for (const auto& o : book) {
      if (o.side == Side::Sell && o.price <= p) ++asks_in;
      if (o.side == Side::Buy && o.price >= p) ++bids_in;
    }
    CHECK(r.trades.size() == std::min(asks_in, bids_in));
    for (const auto& t : r.trades) {
      auto find = [&](const AgentId& a, Side s) {
        return *std::find_if(book.begin(), book.end(), [&](const Order& o) { return o.agent == a && o.side == s; });
      };
      CHECK(find(t.seller, Side::Sell).price <= p);
      CHECK(find(t.buyer, Side::Buy).price >= p);
    }
  }
}

TEST_CASE("opportunity price") {
  auto book = fig2_book();
  CHECK(opportunity_price(GoodId("g5"), book, AgentId("c3")) == 11);
  CHECK(opportunity_price(GoodId("g5"), book, AgentId("s5")) == 12);
  CHECK(!opportunity_price(GoodId("g"), std::vector{ask("a", 5, 0), bid("b", 7, 1)}, AgentId("b")));
  CHECK_THROWS_AS(opportunity_price(GoodId("g5"), book, AgentId("zz")), std::invalid_argument);
}

TEST_CASE("removing an order never raises the M-held price; a full re-clear without a seller never lowers it") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Money> price(0, 30);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Order> book;
    const int n = 2 + static_cast<int>(rng() % 6);
    for (int k = 0; k < n; ++k) {
      const auto id = "a" + std::to_string(k);
      book.push_back(k % 2 ? ask(id, price(rng), k) : bid(id, price(rng), k));
    }
    auto base = clear(GoodId("g"), book);
    if (!base.price) continue;
    for (const auto& o : book) {
      if (auto po = opportunity_price(GoodId("g"), book, o.agent)) CHECK(*po <= *base.price);
      if (o.side != Side::Sell) continue;
      std::vector<Order> rest;
      for (const auto& x : book)
        if (x.agent != o.agent) rest.push_back(x);
      if (auto again = oracle_price(rest)) CHECK(*again >= *base.price);
    }
  }
}
