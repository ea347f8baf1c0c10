#include <doctest.h>

#include <string>
#include <vector>

#include "support.hpp"
#include "tripound/harness.hpp"
#include "tripound/tripound.hpp"

using namespace tripound;

namespace {

Instance n4_one_pair() { return make_instance({"a", "b", "c", "d"}, {{"a", "b"}}); }

}  // namespace

TEST_CASE("mode and scan names round-trip") {
  CHECK(solve_mode_from(to_string(SolveMode::Faithful)) == SolveMode::Faithful);
  CHECK(solve_mode_from(to_string(SolveMode::Extended)) == SolveMode::Extended);
  CHECK(scan_mode_from(to_string(ScanMode::Linear)) == ScanMode::Linear);
  CHECK(scan_mode_from(to_string(ScanMode::Indexed)) == ScanMode::Indexed);
  CHECK(scan_mode_from(to_string(ScanMode::Prefix)) == ScanMode::Prefix);
  CHECK_THROWS_AS(solve_mode_from("fast"), std::invalid_argument);
  CHECK_THROWS_AS(scan_mode_from("hash"), std::invalid_argument);
}

TEST_CASE("four elements, one conflict: exact pairing and step counts") {
  Instance inst = n4_one_pair();

  SolveResult res = tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);
  CHECK(res.pairing.rows == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}});
  CHECK(testsupport::oracle_valid(inst, res.pairing));

  // Hand count. Phase a: one pair, two reads + two writes = 4. Phase b
  // (linear): copying the pair list costs 4; elements 0 and 1 each cost
  // 1 read + 2 scan + 1 removal = 4; elements 2 and 3 each cost 1 read +
  // 1 free-list write = 2 (the working copy is empty by then). Phase c:
  // two column-2 fills at 2 each.
  CHECK(res.trace.steps_phase_a == 4);
  CHECK(res.trace.steps_phase_b == 16);
  CHECK(res.trace.steps_phase_c == 4);
  CHECK(res.trace.total_steps() == 24);
  CHECK(res.trace.k == 4);
  CHECK(res.trace.a == 2);
  CHECK(res.trace.free_count == 2);
  CHECK_FALSE(res.trace.fallback_used);

  CHECK(serialize_trace(res.trace) ==
        "mode=faithful\nscan=linear\nk=4\na=2\nfree_count=2\n"
        "steps_phase_a=4\nsteps_phase_b=16\nsteps_phase_c=4\n"
        "steps_total=24\nfallback_used=0\n");
}

TEST_CASE("scan modes agree on the pairing but not the cost") {
  Instance inst = n4_one_pair();

  SolveResult lin = tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);
  SolveResult idx = tripound_solve(inst, SolveMode::Faithful, ScanMode::Indexed);
  SolveResult pre = tripound_solve(inst, SolveMode::Faithful, ScanMode::Prefix);

  CHECK(idx.pairing == lin.pairing);
  CHECK(pre.pairing == lin.pairing);

  // Indexed: 3 per element plus 1 per free-list write = 3*4 + 2 = 14.
  CHECK(idx.trace.steps_phase_b == 14);
  CHECK(idx.trace.total_steps() == 22);

  // The conflict pair holds the first two declared elements, so the prefix
  // shortcut applies: 3 per prefix element plus 2 per tail element = 10.
  CHECK(pre.trace.steps_phase_b == 10);
  CHECK(pre.trace.total_steps() == 18);
}

TEST_CASE("prefix scan falls back to linear when the front is not all conflicts") {
  Instance inst = make_instance({"a", "b", "c", "d"}, {{"b", "c"}});

  SolveResult pre = tripound_solve(inst, SolveMode::Faithful, ScanMode::Prefix);
  SolveResult lin = tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);

  CHECK(pre.pairing == lin.pairing);
  CHECK(testsupport::oracle_valid(inst, pre.pairing));
  // One probe of element 0 (3 steps) discovers it is free, then the whole
  // linear scan runs on top.
  CHECK(pre.trace.steps_phase_b == lin.trace.steps_phase_b + 3);
}

TEST_CASE("faithful mode succeeds exactly on the quarter threshold") {
  CHECK(feasibility_threshold(8, 2));
  CHECK(feasibility_threshold(8, 1));
  CHECK_FALSE(feasibility_threshold(8, 3));
  CHECK(feasibility_threshold(4, 1));
  CHECK_FALSE(feasibility_threshold(4, 2));
  CHECK_FALSE(feasibility_threshold(2, 1));

  for (int n : {2, 4, 6, 8}) {
    for (const auto& forbidden : enumerate_forbidden_sets(n)) {
      Instance inst = make_numbered_instance(n, forbidden);
      int i = static_cast<int>(forbidden.size());
      bool solved = true;
      Pairing got;
      try {
        got = tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear).pairing;
      } catch (const SolveError& e) {
        solved = false;
        CHECK(e.kind() == SolveErrorKind::InsufficientFreeElements);
      }
      CHECK(solved == feasibility_threshold(n, i));
      if (solved) CHECK(testsupport::oracle_valid(inst, got));
    }
  }
}

TEST_CASE("extended mode falls back and keeps the partial trace") {
  Instance inst = make_instance({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});

  CHECK_THROWS_AS(tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear), SolveError);

  SolveResult res = tripound_solve(inst, SolveMode::Extended, ScanMode::Linear);
  CHECK(res.trace.fallback_used);
  CHECK(res.trace.mode == SolveMode::Extended);
  CHECK(testsupport::oracle_valid(inst, res.pairing));
  CHECK(res.pairing.rows == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}});

  // The work done before the failure survives: phase a placed both pairs
  // (8 steps), phase b scanned everything and found no free element (copy 8,
  // then 1 read + 2 scan + 1 removal per element), phase c never started.
  CHECK(res.trace.steps_phase_a == 8);
  CHECK(res.trace.steps_phase_b == 24);
  CHECK(res.trace.steps_phase_c == 0);
  CHECK(res.trace.free_count == 0);
}

TEST_CASE("extended mode reports truly impossible instances") {
  Instance inst = make_instance({"a", "b"}, {{"a", "b"}});
  try {
    tripound_solve(inst, SolveMode::Extended, ScanMode::Linear);
    CHECK(false);
  } catch (const SolveError& e) {
    CHECK(e.kind() == SolveErrorKind::Infeasible);
  }
}

TEST_CASE("extended mode without fallback matches faithful exactly") {
  Instance inst = n4_one_pair();
  SolveResult fa = tripound_solve(inst, SolveMode::Faithful, ScanMode::Indexed);
  SolveResult ex = tripound_solve(inst, SolveMode::Extended, ScanMode::Indexed);
  CHECK(ex.pairing == fa.pairing);
  CHECK_FALSE(ex.trace.fallback_used);
  CHECK(ex.trace.total_steps() == fa.trace.total_steps());
  CHECK(ex.trace.mode == SolveMode::Extended);
}

TEST_CASE("solving is deterministic") {
  Instance inst = gen_instance({24, 5, 99, false});
  SolveResult first = tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);
  for (int r = 0; r < 3; ++r) {
    SolveResult again = tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);
    CHECK(again.pairing == first.pairing);
    CHECK(again.trace == first.trace);
  }
}

TEST_CASE("empty instance pairs nothing at zero cost") {
  Instance inst = make_instance({}, {});
  SolveResult res = tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);
  CHECK(res.pairing.rows.empty());
  CHECK(res.trace.total_steps() == 0);
}
