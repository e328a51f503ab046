#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "vnfscale/errors.hpp"
#include "vnfscale/model.hpp"
#include "vnfscale/preplan.hpp"

using namespace vnfs;

TEST_CASE("largest sustainable rate of the reference chain") {
  Config cfg = fixtures::single_chain();

  PreplanOptions coarse;
  coarse.rate_step = 1000;
  PrePlan pc = preplan(cfg, 1, coarse);
  CHECK(pc.alpha_max == 886000);
  CHECK(!pc.bound_saturated);
  CHECK(pc.max_demand.counts == std::vector<long long>{985, 1329, 709});

  PreplanOptions fine;  // Mbps granularity squeezes out a little more
  fine.rate_step = 1;
  PrePlan pf = preplan(cfg, 1, fine);
  CHECK(pf.alpha_max == 886500);
}

TEST_CASE("witness placement covers the demand at alpha_max") {
  Config cfg = fixtures::single_chain(60);
  PrePlan plan = preplan(cfg, 1);
  DemandVector need =
      demand(cfg.chains, cfg.types,
             std::vector<double>{static_cast<double>(plan.alpha_max)});
  CHECK(plan.max_demand.counts == need.counts);
  CHECK(check_coverage(plan.max_placement, plan.max_demand));
  CHECK(check_capacity(plan.max_placement, cfg.types, cfg.cluster));

  // One more step of rate must not pack, otherwise the search stopped early.
  DemandVector over =
      demand(cfg.chains, cfg.types,
             std::vector<double>{static_cast<double>(plan.alpha_max + 1)});
  CHECK(!pack(over, cfg.types, cfg.cluster).has_value());
}

TEST_CASE("multisets mirror the witness placement") {
  Config cfg = fixtures::single_chain(60);
  PrePlan plan = preplan(cfg, 1);
  REQUIRE(plan.multisets.size() == 3);
  for (int i = 0; i < 3; ++i) {
    const std::vector<int>& ids = plan.multisets[i].ids;
    CHECK(static_cast<long long>(ids.size()) ==
          plan.max_placement.column_sums()[i]);
    // Filled in ascending server order with one entry per granted instance,
    // so equal IDs sit next to each other and the sequence never decreases.
    CHECK(std::is_sorted(ids.begin(), ids.end()));
    for (int u : ids) CHECK(plan.max_placement.at(u, i) > 0);
  }
}

TEST_CASE("multiset ejection pops the most recent insertions first") {
  ServerMultiset ms;
  ms.insert(4);
  ms.insert(7);
  ms.insert(7);
  ms.insert(2);
  CHECK(ms.eject(2) == std::vector<int>{2, 7});
  CHECK(ms.eject(1) == std::vector<int>{7});
  try {
    ms.eject(2);  // only one id left
    FAIL("expected underflow to throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::envelope);
  }
}

TEST_CASE("empty cluster pre-plans to a zero rate") {
  Config cfg = fixtures::single_chain(0);
  PrePlan plan = preplan(cfg, 1);
  CHECK(plan.alpha_max == 0);
  CHECK(plan.max_demand.counts == std::vector<long long>{0, 0, 0});
  for (const ServerMultiset& ms : plan.multisets) CHECK(ms.size() == 0);
}

TEST_CASE("explicit search ceiling can saturate") {
  Config cfg = fixtures::single_chain();
  PreplanOptions opts;
  opts.max_rate_bound = 500000;  // well below what 1000 servers sustain
  PrePlan plan = preplan(cfg, 1, opts);
  CHECK(plan.alpha_max == 500000);
  CHECK(plan.bound_saturated);
}

TEST_CASE("pre-plan survives a JSON round trip") {
  Config cfg = fixtures::single_chain(60);
  PrePlan plan = preplan(cfg, 1);
  PrePlan copy = PrePlan::from_json(plan.to_json());
  CHECK(copy.chain_id == plan.chain_id);
  CHECK(copy.alpha_max == plan.alpha_max);
  CHECK(copy.bound_saturated == plan.bound_saturated);
  CHECK(copy.max_demand.counts == plan.max_demand.counts);
  CHECK(copy.max_placement == plan.max_placement);
  CHECK(copy.multisets == plan.multisets);

  try {
    PrePlan::from_json("{\"chain_id\": 1}");
    FAIL("expected malformed plan to throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}

TEST_CASE("unknown chain id is rejected") {
  Config cfg = fixtures::single_chain();
  CHECK_THROWS_AS(preplan(cfg, 9), Error);
}
