#include <doctest.h>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "support.hpp"
#include "tripound/counting.hpp"
#include "tripound/harness.hpp"

using namespace tripound;

namespace {

constexpr long long kMin = std::numeric_limits<long long>::min();

}  // namespace

TEST_CASE("variant names round-trip") {
  CHECK(phi_variant_from(to_string(PhiVariant::EvenStep)) == PhiVariant::EvenStep);
  CHECK(phi_variant_from(to_string(PhiVariant::UnitStep)) == PhiVariant::UnitStep);
  CHECK_THROWS_AS(phi_variant_from("stepwise"), std::invalid_argument);
}

TEST_CASE("brute-force counts match hand-computed values") {
  // No conflicts: every grid placement of all n elements is legal.
  Instance open4 = make_instance({"a", "b", "c", "d"}, {});
  CHECK(count_arrangements_bruteforce(open4) == 24);
  CHECK(count_matchings_bruteforce(open4) == 3);

  // One conflict on n=4: the bad pair can sit ordered 2 ways in either of 2
  // rows, times 2 orders of the rest, so 24 - 8 legal arrangements remain.
  Instance inst = make_instance({"a", "b", "c", "d"}, {{"a", "b"}});
  CHECK(count_arrangements_bruteforce(inst) == 16);
  CHECK(count_matchings_bruteforce(inst) == 2);

  // n=6 with one conflict: 15 matchings total, 3 contain the bad pair.
  Instance six = make_instance({"a", "b", "c", "d", "e", "f"}, {{"a", "b"}});
  CHECK(count_matchings_bruteforce(six) == 12);
  CHECK(count_arrangements_bruteforce(six) == 576);

  // n=6 fully paired: inclusion-exclusion gives 15 - 9 + 3 - 1 = 8.
  Instance full = make_instance({"a", "b", "c", "d", "e", "f"},
                                {{"a", "b"}, {"c", "d"}, {"e", "f"}});
  CHECK(count_matchings_bruteforce(full) == 8);
  CHECK(count_arrangements_bruteforce(full) == 384);

  Instance empty = make_instance({}, {});
  CHECK(count_arrangements_bruteforce(empty) == 1);
  CHECK(count_matchings_bruteforce(empty) == 1);
}

TEST_CASE("ordered and unordered counts satisfy the grid identity") {
  for (int n : {2, 4, 6, 8}) {
    long long orderings = 1;
    for (int k = 2; k <= n / 2; ++k) orderings *= k;
    orderings <<= n / 2;
    for (const auto& forbidden : enumerate_forbidden_sets(n)) {
      Instance inst = make_numbered_instance(n, forbidden);
      CHECK(count_arrangements_bruteforce(inst) ==
            count_matchings_bruteforce(inst) * orderings);
    }
  }
}

TEST_CASE("enumerate_matchings lists canonical order and respects conflicts") {
  Instance open4 = make_instance({"a", "b", "c", "d"}, {});
  std::vector<Pairing> all = enumerate_matchings(open4);
  REQUIRE(all.size() == 3);
  CHECK(all[0].rows == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  CHECK(all[1].rows == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}});
  CHECK(all[2].rows == std::vector<std::pair<int, int>>{{0, 3}, {1, 2}});

  Instance inst = make_instance({"a", "b", "c", "d"}, {{"a", "b"}});
  std::vector<Pairing> legal = enumerate_matchings(inst);
  REQUIRE(legal.size() == 2);
  for (const auto& p : legal) CHECK(testsupport::oracle_valid(inst, p));
}

TEST_CASE("size limits throw instead of running forever") {
  std::vector<std::string> names12, names18;
  for (int k = 0; k < 18; ++k) {
    if (k < 12) names12.push_back("x" + std::to_string(k));
    names18.push_back("x" + std::to_string(k));
  }
  Instance big12 = make_instance(names12, {});
  Instance big18 = make_instance(names18, {});
  CHECK_THROWS_AS(count_arrangements_bruteforce(big12), SizeLimitError);
  CHECK_THROWS_AS(enumerate_matchings(big12), SizeLimitError);
  CHECK_NOTHROW(count_matchings_bruteforce(big12));
  CHECK_THROWS_AS(count_matchings_bruteforce(big18), SizeLimitError);
}

TEST_CASE("even-step series evaluates exactly as written") {
  // e=4, i=1: 24 - 2!*1!*4 - 4!*1!*2 - 6!*1!*1 = 24 - 8 - 48 - 720.
  CHECK(eval_phi({4, 1, 2, PhiVariant::EvenStep}) == -752);
  // i=0 changes nothing because 0! = 1! = 1.
  CHECK(eval_phi({4, 0, 2, PhiVariant::EvenStep}) == -752);
  // e=4, i=2: 24 - 2*2*4 - 24*2*2 - 720*2*1.
  CHECK(eval_phi({4, 2, 2, PhiVariant::EvenStep}) == -1528);
  // e=2: 2 - 2!*i!*2, multiplier hits zero immediately after.
  CHECK(eval_phi({2, 0, 2, PhiVariant::EvenStep}) == -2);
  CHECK(eval_phi({2, 1, 2, PhiVariant::EvenStep}) == -2);
  // e=0 never enters the series.
  CHECK(eval_phi({0, 0, 2, PhiVariant::EvenStep}) == 1);
  CHECK(eval_phi({0, 5, 2, PhiVariant::EvenStep}) == 1);
}

TEST_CASE("unit-step series evaluates exactly as written") {
  // e=4, i=1: 24 - 8 - sum over a=2..4 of (a+2)!*1!*(4 - (a+2)/2)
  //         = 24 - 8 - 24*2 - 120*2 - 720*1.
  CHECK(eval_phi({4, 1, 2, PhiVariant::UnitStep}) == -992);
  // e=2, i=0: the a=2 summand has multiplier 4/2 - ... = 0.
  CHECK(eval_phi({2, 0, 2, PhiVariant::UnitStep}) == -2);
}

TEST_CASE("series inputs are clamped, outputs saturate") {
  // Negative or tiny inputs clamp to e,i >= 0 and a_start >= 2.
  CHECK(eval_phi({-5, -3, -10, PhiVariant::EvenStep}) == 1);
  CHECK(eval_phi({4, 1, 0, PhiVariant::EvenStep}) == -752);

  // Past 20! everything pins; the running total saturates instead of
  // wrapping, and the loop cuts off once the floor is reached.
  CHECK(eval_phi({25, 0, 2, PhiVariant::EvenStep}) == kMin);
  CHECK(eval_phi({25, 3, 2, PhiVariant::UnitStep}) == kMin);
  // Absurd sizes must still return promptly.
  CHECK(eval_phi({1000000000000000000LL, 5, 2, PhiVariant::UnitStep}) == kMin);
  CHECK(eval_phi({1000000000000000000LL, 5, 2, PhiVariant::EvenStep}) == kMin);
}

TEST_CASE("formula disagrees with brute force on small instances") {
  for (int n : {2, 4, 6, 8}) {
    std::vector<std::pair<int, int>> forbidden;
    for (int i = 0; i <= n / 2; ++i) {
      Instance inst = make_numbered_instance(n, forbidden);
      for (PhiVariant v : {PhiVariant::EvenStep, PhiVariant::UnitStep}) {
        CountReport rep = compare_counts(inst, v);
        CHECK_FALSE(rep.agree);
        CHECK(rep.phi_value < 0);       // the series overshoots immediately
        CHECK(rep.brute_arrangements >= 0);
      }
      if (2 * (i + 1) <= n) forbidden.emplace_back(2 * i, 2 * i + 1);
    }
  }
}

TEST_CASE("count report serializes byte-stably") {
  Instance inst = make_instance({"a", "b", "c", "d"}, {{"a", "b"}});
  CountReport rep = compare_counts(inst, PhiVariant::EvenStep);
  CHECK(rep.phi_value == -752);
  CHECK(rep.brute_arrangements == 16);
  CHECK(rep.brute_matchings == 2);
  CHECK_FALSE(rep.agree);
  CHECK(serialize_count_report(inst, PhiVariant::EvenStep, rep) ==
        "n                   = 4\n"
        "i                   = 1\n"
        "variant             = even-step\n"
        "phi_value           = -752\n"
        "brute_arrangements  = 16\n"
        "brute_matchings     = 2\n"
        "agree               = false\n");
}
