#pragma once

#include <string>
#include <vector>

#include "tripound/model.hpp"

namespace tripound {

class SizeLimitError : public std::runtime_error {
 public:
  explicit SizeLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Ordered count: permutations of all n elements placed row-major into the
// n/2 x 2 grid with no row an incompatible pair. Row order and within-row
// order both count. n <= 10.
long long count_arrangements_bruteforce(const Instance& inst);

// Unordered count: perfect matchings of the element set avoiding the
// incompatible pairs. n <= 16.
long long count_matchings_bruteforce(const Instance& inst);

// All valid matchings, smallest unmatched element first with partners
// ascending, recursively. Rows come out (small, large) sorted by left
// element. n <= 10.
std::vector<Pairing> enumerate_matchings(const Instance& inst);

// The two literal readings of the legal-arrangement series. Neither is
// trusted: the value is computed exactly as written and compared against
// brute force elsewhere.
enum class PhiVariant { EvenStep, UnitStep };

const char* to_string(PhiVariant v);
PhiVariant phi_variant_from(const std::string& s);

struct PhiParams {
  long long e = 0;        // element count
  long long i = 0;        // incompatible-pair count
  long long a_start = 2;  // series start
  PhiVariant variant = PhiVariant::EvenStep;
};

// Literal evaluation, signed; saturates at the int64 range instead of
// overflowing. even-step: phi = e! - sum over a = a0, a0+2, ... of
// (a! * i!) * m(a) with m(a0) = e, m(a) = e - a/2 after that, ending when
// the multiplier reaches 0. unit-step: phi = e! - (a0! * i!) * e -
// sum_{a=a0}^{e} ((a+2)! * i!) * (e - (a+2)/2) with unit increments and
// division truncating toward zero.
long long eval_phi(const PhiParams& p);

struct CountReport {
  long long phi_value = 0;
  long long brute_arrangements = 0;
  long long brute_matchings = 0;
  bool agree = false;  // phi_value == brute_arrangements
};

// Fills the report with e = n, i = |forbidden|, a_start = 2, and checks the
// ordered/unordered identity arrangements = matchings * (n/2)! * 2^(n/2).
CountReport compare_counts(const Instance& inst, PhiVariant variant);

std::string serialize_count_report(const Instance& inst, PhiVariant variant,
                                   const CountReport& report);

}  // namespace tripound
