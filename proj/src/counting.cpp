#include "tripound/counting.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tripound {

namespace {

constexpr long long kInt64Max = std::numeric_limits<long long>::max();
constexpr long long kInt64Min = std::numeric_limits<long long>::min();

long long saturate(__int128 v) {
  if (v > static_cast<__int128>(kInt64Max)) return kInt64Max;
  if (v < static_cast<__int128>(kInt64Min)) return kInt64Min;
  return static_cast<long long>(v);
}

// Saturating factorial; anything past 20! pins to the int64 maximum.
long long sat_factorial(long long x) {
  if (x < 0) return 1;
  __int128 acc = 1;
  for (long long k = 2; k <= x; ++k) {
    acc *= k;
    if (acc > static_cast<__int128>(kInt64Max)) return kInt64Max;
  }
  return static_cast<long long>(acc);
}

// Series terms are non-negative; cap them (and the running total) well past
// the int64 range so the final saturate() is the only place precision drops.
constexpr __int128 kTermCap = static_cast<__int128>(kInt64Max) * 8;

__int128 mul_clamp(__int128 a, __int128 b) {
  if (a == 0 || b == 0) return 0;
  if (a > kTermCap / b) return kTermCap;
  return a * b;
}

__int128 term(long long a, long long i, long long mult) {
  return mul_clamp(mul_clamp(sat_factorial(a), sat_factorial(i)), mult);
}

void require_even(const Instance& inst) {
  if (inst.n() % 2 != 0) throw std::invalid_argument("odd element count");
}

}  // namespace

const char* to_string(PhiVariant v) {
  return v == PhiVariant::EvenStep ? "even-step" : "unit-step";
}

PhiVariant phi_variant_from(const std::string& s) {
  if (s == "even-step") return PhiVariant::EvenStep;
  if (s == "unit-step") return PhiVariant::UnitStep;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

long long count_arrangements_bruteforce(const Instance& inst) {
  require_even(inst);
  const int n = inst.n();
  if (n > 10)
    throw SizeLimitError("arrangement enumeration limited to n <= 10, got " + std::to_string(n));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long long legal = 0;
  do {
    bool ok = true;
    for (int r = 0; r < n / 2; ++r) {
      if (inst.partner_of(perm[2 * r]) == perm[2 * r + 1]) {
        ok = false;
        break;
      }
    }
    if (ok) ++legal;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return legal;
}

namespace {

void matchings_rec(const Instance& inst, std::vector<bool>& used, int matched,
                   std::vector<std::pair<int, int>>& rows, long long& count,
                   std::vector<Pairing>* out) {
  const int n = inst.n();
  if (matched == n) {
    ++count;
    if (out) out->push_back(Pairing{rows});
    return;
  }
  int first = 0;
  while (used[first]) ++first;
  used[first] = true;
  for (int p = first + 1; p < n; ++p) {
    if (used[p] || inst.partner_of(first) == p) continue;
    used[p] = true;
    rows.emplace_back(first, p);
    matchings_rec(inst, used, matched + 2, rows, count, out);
    rows.pop_back();
    used[p] = false;
  }
  used[first] = false;
}

}  // namespace

long long count_matchings_bruteforce(const Instance& inst) {
  require_even(inst);
  if (inst.n() > 16)
    throw SizeLimitError("matching count limited to n <= 16, got " + std::to_string(inst.n()));
  std::vector<bool> used(inst.n(), false);
  std::vector<std::pair<int, int>> rows;
  long long count = 0;
  matchings_rec(inst, used, 0, rows, count, nullptr);
  return count;
}

std::vector<Pairing> enumerate_matchings(const Instance& inst) {
  require_even(inst);
  if (inst.n() > 10)
    throw SizeLimitError("matching enumeration limited to n <= 10, got " +
                         std::to_string(inst.n()));
  std::vector<bool> used(inst.n(), false);
  std::vector<std::pair<int, int>> rows;
  long long count = 0;
  std::vector<Pairing> out;
  matchings_rec(inst, used, 0, rows, count, &out);
  return out;
}

long long eval_phi(const PhiParams& p) {
  const long long e = std::max<long long>(p.e, 0);
  const long long i = std::max<long long>(p.i, 0);
  const long long a0 = std::max<long long>(p.a_start, 2);
  // Terms are non-negative, so once phi falls past the floor it stays
  // saturated and the remaining series can be skipped.
  const __int128 floor = -kTermCap;
  __int128 phi = sat_factorial(e);
  if (p.variant == PhiVariant::EvenStep) {
    if (e > 0) {
      phi -= term(a0, i, e);  // first term carries the full e
      for (long long a = a0 + 2; e - a / 2 > 0 && phi > floor; a += 2)
        phi -= term(a, i, e - a / 2);
    }
  } else {
    phi -= term(a0, i, e);
    for (long long a = a0; a <= e && phi > floor; ++a)
      phi -= term(a + 2, i, e - (a + 2) / 2);
  }
  return saturate(phi);
}

CountReport compare_counts(const Instance& inst, PhiVariant variant) {
  require_even(inst);
  CountReport rep;
  rep.phi_value = eval_phi({inst.n(), static_cast<long long>(inst.forbidden.size()), 2, variant});
  rep.brute_arrangements = count_arrangements_bruteforce(inst);
  rep.brute_matchings = count_matchings_bruteforce(inst);
  rep.agree = rep.phi_value == rep.brute_arrangements;

  // Row permutations and within-row swaps are the only ordering freedoms.
  long long orderings = sat_factorial(inst.n() / 2) << (inst.n() / 2);
  if (rep.brute_arrangements != rep.brute_matchings * orderings)
    throw std::logic_error("ordered/unordered identity violated");
  return rep;
}

std::string serialize_count_report(const Instance& inst, PhiVariant variant,
                                   const CountReport& report) {
  std::string out;
  auto line = [&out](const std::string& key, const std::string& value) {
    std::string k = key;
    k.resize(20, ' ');
    out += k + "= " + value + "\n";
  };
  line("n", std::to_string(inst.n()));
  line("i", std::to_string(inst.forbidden.size()));
  line("variant", to_string(variant));
  line("phi_value", std::to_string(report.phi_value));
  line("brute_arrangements", std::to_string(report.brute_arrangements));
  line("brute_matchings", std::to_string(report.brute_matchings));
  line("agree", report.agree ? "true" : "false");
  return out;
}

}  // namespace tripound
