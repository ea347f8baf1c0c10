#include "tripound/tripound.hpp"

#include <algorithm>
#include <stdexcept>

#include "tripound/sat.hpp"

namespace tripound {

const char* to_string(SolveMode m) {
  return m == SolveMode::Faithful ? "faithful" : "extended";
}

const char* to_string(ScanMode s) {
  switch (s) {
    case ScanMode::Linear: return "linear";
    case ScanMode::Indexed: return "indexed";
    case ScanMode::Prefix: return "prefix";
  }
  return "?";
}

SolveMode solve_mode_from(const std::string& s) {
  if (s == "faithful") return SolveMode::Faithful;
  if (s == "extended") return SolveMode::Extended;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

ScanMode scan_mode_from(const std::string& s) {
  if (s == "linear") return ScanMode::Linear;
  if (s == "indexed") return ScanMode::Indexed;
  if (s == "prefix") return ScanMode::Prefix;
  throw std::invalid_argument("unknown scan mode '" + s + "'");
}

std::string serialize_trace(const TripoundTrace& t) {
  std::string out;
  out += "mode=" + std::string(to_string(t.mode)) + "\n";
  out += "scan=" + std::string(to_string(t.scan)) + "\n";
  out += "k=" + std::to_string(t.k) + "\n";
  out += "a=" + std::to_string(t.a) + "\n";
  out += "free_count=" + std::to_string(t.free_count) + "\n";
  out += "steps_phase_a=" + std::to_string(t.steps_phase_a) + "\n";
  out += "steps_phase_b=" + std::to_string(t.steps_phase_b) + "\n";
  out += "steps_phase_c=" + std::to_string(t.steps_phase_c) + "\n";
  out += "steps_total=" + std::to_string(t.total_steps()) + "\n";
  out += "fallback_used=" + std::to_string(t.fallback_used ? 1 : 0) + "\n";
  return out;
}

bool feasibility_threshold(int n, int i) { return 4 * i <= n; }

namespace {

// Phase (b), linear scan: membership test against a working copy of the
// incompatible list that loses each element once it has been seen, so the
// search area shrinks as the scan proceeds.
std::vector<int> free_list_linear(const Instance& inst, long long& steps) {
  std::vector<int> tau;
  tau.reserve(inst.forbidden.size() * 2);
  for (auto [u, v] : inst.forbidden) {
    tau.push_back(u);
    tau.push_back(v);
    steps += 4;  // two cell reads, two writes
  }
  std::vector<int> free;
  for (int e = 0; e < inst.n(); ++e) {
    steps += 1;  // S cell read
    bool hit = false;
    for (size_t t = 0; t < tau.size(); ++t) {
      steps += 2;  // cell read + comparison
      if (tau[t] == e) {
        tau.erase(tau.begin() + static_cast<long>(t));
        steps += 1;  // removal write
        hit = true;
        break;
      }
    }
    if (!hit) {
      free.push_back(e);
      steps += 1;  // free-list write
    }
  }
  return free;
}

std::vector<int> free_list_indexed(const Instance& inst, long long& steps) {
  std::vector<int> free;
  for (int e = 0; e < inst.n(); ++e) {
    steps += 3;  // S cell read, partner cell read, comparison
    if (inst.partner_of(e) == -1) {
      free.push_back(e);
      steps += 1;
    }
  }
  return free;
}

std::vector<int> free_list_prefix(const Instance& inst, long long& steps) {
  const int two_i = static_cast<int>(inst.forbidden.size()) * 2;
  bool all_incompatible = true;
  for (int e = 0; e < two_i; ++e) {
    steps += 3;  // S cell read, partner cell read, comparison
    if (inst.partner_of(e) == -1) {
      all_incompatible = false;
      break;
    }
  }
  if (!all_incompatible) return free_list_linear(inst, steps);
  // Exactly 2i elements have partners, so a fully incompatible prefix is the
  // whole incompatible set; the tail is the free list as-is.
  std::vector<int> free;
  for (int e = two_i; e < inst.n(); ++e) {
    free.push_back(e);
    steps += 2;  // S cell read + free-list write
  }
  return free;
}

// Throws SolveError with `tr` reflecting the work done up to the failure.
Pairing faithful_solve(const Instance& inst, ScanMode scan, TripoundTrace& tr) {
  const int n = inst.n();
  const int i = static_cast<int>(inst.forbidden.size());
  tr.k = n;
  tr.a = 2 * i;
  tr.scan = scan;

  // Phase a: incompatible elements into column 1, pair order. The grid grows
  // past n/2 rows when 2i exceeds it; phase c then runs out of free elements
  // before those rows could ever be completed.
  std::vector<std::pair<int, int>> rows(std::max(n / 2, 2 * i), {-1, -1});
  int r = 0;
  for (auto [u, v] : inst.forbidden) {
    rows[r++].first = u;
    rows[r++].first = v;
    tr.steps_phase_a += 4;  // two cell reads, two writes
  }

  // Phase b: free list.
  std::vector<int> free;
  switch (scan) {
    case ScanMode::Linear: free = free_list_linear(inst, tr.steps_phase_b); break;
    case ScanMode::Indexed: free = free_list_indexed(inst, tr.steps_phase_b); break;
    case ScanMode::Prefix: free = free_list_prefix(inst, tr.steps_phase_b); break;
  }
  tr.free_count = static_cast<int>(free.size());

  // Phase c: column 2 of the incompatible rows, then the remaining rows.
  size_t fp = 0;
  for (int row = 0; row < 2 * i; ++row) {
    if (fp >= free.size())
      throw SolveError(SolveErrorKind::InsufficientFreeElements,
                       "free elements exhausted at row " + std::to_string(row) + " (" +
                           std::to_string(i) + " incompatible pairs over " + std::to_string(n) +
                           " elements)");
    rows[row].second = free[fp++];
    tr.steps_phase_c += 2;
  }
  for (int row = 2 * i; row < n / 2; ++row) {
    rows[row].first = free[fp++];
    rows[row].second = free[fp++];
    tr.steps_phase_c += 4;
  }
  return Pairing{std::move(rows)};
}

}  // namespace

SolveResult tripound_solve(const Instance& inst, SolveMode mode, ScanMode scan) {
  SolveResult res;
  res.trace.mode = mode;
  if (mode == SolveMode::Faithful) {
    res.pairing = faithful_solve(inst, scan, res.trace);
    res.trace.mode = SolveMode::Faithful;
    return res;
  }
  try {
    res.pairing = faithful_solve(inst, scan, res.trace);
    res.trace.mode = SolveMode::Extended;
    return res;
  } catch (const SolveError&) {
    // SAT fallback: encode, solve, decode.
    auto [cnf, vm] = encode(inst);
    DpllResult dr = dpll_solve(cnf);
    if (!dr.sat) throw SolveError(SolveErrorKind::Infeasible, "no valid pairing exists");
    res.pairing = decode(dr.assignment, vm);
    res.trace.mode = SolveMode::Extended;
    res.trace.fallback_used = true;
    return res;
  }
}

}  // namespace tripound
