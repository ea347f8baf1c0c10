#pragma once

#include <string>

#include "tripound/model.hpp"

namespace tripound {

enum class SolveMode { Faithful, Extended };

// How phase (b) detects whether an element belongs to an incompatible pair:
//   Linear  - scan a working copy of the incompatible list, removing each
//             element once found so later scans shrink.
//   Indexed - constant-time partner lookup.
//   Prefix  - when the incompatible elements are exactly the first 2i
//             declared elements, slice them off and keep the rest; falls
//             back to the linear scan otherwise.
enum class ScanMode { Linear, Indexed, Prefix };

const char* to_string(SolveMode m);
const char* to_string(ScanMode s);
SolveMode solve_mode_from(const std::string& s);  // throws std::invalid_argument
ScanMode scan_mode_from(const std::string& s);

// Step accounting for one solve. A step is one matrix cell read, one cell
// write, or one element comparison.
struct TripoundTrace {
  int k = 0;           // element count read from S
  int a = 0;           // incompatible elements placed into column 1 (2i)
  int free_count = 0;  // free-list length after phase b
  long long steps_phase_a = 0;
  long long steps_phase_b = 0;
  long long steps_phase_c = 0;
  ScanMode scan = ScanMode::Linear;
  SolveMode mode = SolveMode::Faithful;
  bool fallback_used = false;

  long long total_steps() const { return steps_phase_a + steps_phase_b + steps_phase_c; }
  bool operator==(const TripoundTrace&) const = default;
};

// Flat key=value block, one field per line; byte-stable across runs.
std::string serialize_trace(const TripoundTrace& t);

enum class SolveErrorKind { InsufficientFreeElements, Infeasible };

class SolveError : public std::runtime_error {
 public:
  SolveError(SolveErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  SolveErrorKind kind() const { return kind_; }

 private:
  SolveErrorKind kind_;
};

struct SolveResult {
  Pairing pairing;
  TripoundTrace trace;
};

// Three-phase pairing: (a) place the incompatible elements into column 1 in
// pair order, (b) build the free list with the selected scan, (c) fill
// column 2 and then the remaining rows from the free list. Faithful mode
// fails with InsufficientFreeElements exactly when i > n/4; extended mode
// falls back to the SAT route instead and fails only on truly infeasible
// instances.
SolveResult tripound_solve(const Instance& inst, SolveMode mode = SolveMode::Faithful,
                           ScanMode scan = ScanMode::Linear);

// True iff faithful mode succeeds: column 1 consumes 2i of the n/2 rows, so
// the binding constraint is n/2 - 2i >= 0, i.e. i <= n/4.
bool feasibility_threshold(int n, int i);

}  // namespace tripound
