#include <doctest.h>

#include <random>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vnfscale/errors.hpp"
#include "vnfscale/model.hpp"
#include "vnfscale/online_msc.hpp"

using namespace vnfs;

namespace {

DemandVector needs(std::vector<long long> counts) {
  DemandVector d;
  d.counts = std::move(counts);
  return d;
}

}  // namespace

TEST_CASE("assignment solver matches brute force") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 80; ++it) {
    int n = 1 + static_cast<int>(rng() % 6);
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (auto& row : cost)
      for (double& c : row) c = static_cast<double>(rng() % 100);

    std::vector<int> match = min_cost_assignment(cost);
    REQUIRE(static_cast<int>(match.size()) == n);
    std::vector<bool> seen(n, false);
    double total = 0;
    for (int r = 0; r < n; ++r) {
      REQUIRE(match[r] >= 0);
      REQUIRE(match[r] < n);
      CHECK(!seen[match[r]]);  // a permutation
      seen[match[r]] = true;
      total += cost[r][match[r]];
    }
    CHECK(total == doctest::Approx(oracle::assignment_bruteforce(cost))
                       .epsilon(1e-9));
  }
}

TEST_CASE("each slot is packed into the fewest servers") {
  Config cfg = fixtures::three_chains(30);
  MscState st(cfg);
  const Placement& x = st.step(needs({5, 3, 2, 1}));
  CHECK(check_coverage(x, needs({5, 3, 2, 1})));
  CHECK(check_capacity(x, cfg.types, cfg.cluster));

  int used = 0;
  for (int u = 0; u < x.servers; ++u) {
    bool any = false;
    for (int i = 0; i < x.types; ++i) any = any || x.at(u, i) > 0;
    used += any ? 1 : 0;
  }
  std::vector<std::vector<double>> fp = {{4}, {2}, {8}, {2}};
  CHECK(used == oracle::min_servers(fp, {16}, {5, 3, 2, 1}, 30));
}

TEST_CASE("repacking reuses servers to dodge deployment cost") {
  Config cfg = fixtures::mono(4);
  MscState st(cfg);
  st.step(needs({3}));
  CHECK(st.last_deploy_cost() == doctest::Approx(3 * 4.0));

  // Demand drops, then rebounds within the same server count: the matcher
  // must land the repacked patterns on the servers that already host the
  // instances, so only net growth is billed.
  st.step(needs({2}));
  CHECK(st.last_deploy_cost() == doctest::Approx(0.0));
  st.step(needs({3}));
  CHECK(st.last_deploy_cost() == doctest::Approx(4.0));
}

TEST_CASE("matching picks the cheapest landing spots across types") {
  // Two types, both fit one instance per server. After slot one the cluster
  // hosts type A on two servers. Slot two needs one A and one B: the B
  // pattern should land on a server that held nothing or an evicted A, never
  // pay for a fresh A.
  Config cfg = parse_config(R"({
    "vnf_types": [
      {"id": 1, "name": "a", "demand": [1], "capacity_mbps": 1,
       "op_cost": 1, "deploy_cost": 10},
      {"id": 2, "name": "b", "demand": [1], "capacity_mbps": 1,
       "op_cost": 1, "deploy_cost": 2}
    ],
    "chains": [{"id": 1, "stages": [1, 2], "gains": [1.0, 1.0]}],
    "cluster": {"num_servers": 3, "capacity": [1]}
  })");
  MscState st(cfg);
  st.step(needs({2, 0}));
  CHECK(st.last_deploy_cost() == doctest::Approx(20.0));
  st.step(needs({1, 1}));
  CHECK(st.last_deploy_cost() == doctest::Approx(2.0));  // just the new b
}

TEST_CASE("deploy cost reported by the matcher equals the placement delta") {
  Config cfg = fixtures::three_chains(40);
  MscState st(cfg);
  std::mt19937_64 rng(31);
  Placement prev = st.placement();
  for (int t = 0; t < 150; ++t) {
    DemandVector need;
    need.counts = {static_cast<long long>(rng() % 12),
                   static_cast<long long>(rng() % 8),
                   static_cast<long long>(rng() % 5),
                   static_cast<long long>(rng() % 8)};
    const Placement& x = st.step(need);
    CHECK(check_coverage(x, need));
    CHECK(check_capacity(x, cfg.types, cfg.cluster));
    SlotCost sc = slot_cost(x, prev, cfg.types);
    CHECK(sc.deployment ==
          doctest::Approx(st.last_deploy_cost()).epsilon(1e-9));
    prev = x;
  }
}

TEST_CASE("unpackable demand raises overload") {
  Config cfg = fixtures::mono(2);
  MscState st(cfg);
  st.step(needs({2}));
  try {
    st.step(needs({3}));
    FAIL("expected overload to throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::overload);
  }
}

TEST_CASE("repacked trajectories are deterministic") {
  Config cfg = fixtures::three_chains(25);
  MscState a(cfg), b(cfg);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    DemandVector need;
    need.counts = {static_cast<long long>(rng() % 10),
                   static_cast<long long>(rng() % 6),
                   static_cast<long long>(rng() % 4),
                   static_cast<long long>(rng() % 6)};
    CHECK(a.step(need) == b.step(need));
  }
}
