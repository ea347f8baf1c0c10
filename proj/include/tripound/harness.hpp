#pragma once

// Seeded instance generation, empirical step-count scaling with a log-log
// fit, determinism checking, and the umbrella verification suite that
// cross-checks every solver path against brute-force oracles.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tripound/model.hpp"
#include "tripound/tripound.hpp"

namespace tripound {

// 64-bit linear congruential generator. The constants are normative:
// any reimplementation using them regenerates identical instances.
constexpr uint64_t kLcgMul = 6364136223846793005ULL;
constexpr uint64_t kLcgInc = 1442695040888963407ULL;

uint64_t lcg_next(uint64_t state);

struct Lcg {
  uint64_t state = 0;

  uint64_t next() {
    state = lcg_next(state);
    return state;
  }
  // Uniform values come from the high 32 bits; the low bits of an LCG
  // cycle with short periods.
  uint32_t next_u32() { return static_cast<uint32_t>(next() >> 32); }
  uint64_t below(uint64_t bound) { return next_u32() % bound; }  // bound > 0
};

struct SpecInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenSpec {
  int n = 0;          // element count, even
  int i = 0;          // forbidden pair count, 2i <= n
  uint64_t seed = 0;
  bool incompatibles_first = false;  // forbidden elements head the declaration
};

// Deterministic function of the spec: names "e0".."e{n-1}", forbidden
// elements chosen by a seeded Fisher-Yates over ids and paired off
// consecutively. With incompatibles_first the declaration order starts
// with the forbidden elements in pair order, then the rest ascending.
// Throws SpecInvalid when the GenSpec invariants fail.
Instance gen_instance(const GenSpec& spec);

// Elements "e0".."e{n-1}" declared in id order, forbidden pairs given by id.
Instance make_numbered_instance(int n, const std::vector<std::pair<int, int>>& forbidden_ids);

// Every set of pairwise-disjoint pairs over ids 0..n-1 (the empty set
// included), in a fixed order: lowest member first, partners ascending.
std::vector<std::vector<std::pair<int, int>>> enumerate_forbidden_sets(int n);

// ---- scaling ----

struct ScalingPoint {
  int n = 0;
  int i = 0;
  long long steps = 0;
  int free_count = 0;  // free-list length after phase (b), the U of the run
};

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;  // largest |log residual|
};

// Least-squares line through the given (x, y) points taken in natural
// logs. Throws std::invalid_argument on fewer than two points or zero
// spread in x.
FitResult fit_loglog(const std::vector<std::pair<double, double>>& points);

struct ScalingReport {
  std::vector<ScalingPoint> points;  // sorted by n ascending
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;
};

// Runs faithful solves over the given sizes with i = n/8 and fits
// total steps against n on the log-log scale. Sizes must be even and at
// least 8 (throws SpecInvalid otherwise); each size draws its instance
// from seed + n so single sizes can be reproduced in isolation.
ScalingReport measure_scaling(const std::vector<int>& sizes, ScanMode scan, uint64_t seed);

std::string serialize_scaling_report(const ScalingReport& report);

// ---- determinism ----

struct DeterminismVerdict {
  bool ok = true;
  std::string divergence;  // first differing line when not ok
};

// One run's observable output as text; run_index lets test doubles
// inject a divergence on a chosen run.
using SnapshotFn = std::function<std::string(const Instance& inst, int run_index)>;

// Everything a solve exposes: pairings, traces, and the bundled program's
// grid and step count, with errors captured as text so infeasible
// instances snapshot deterministically too.
std::string solver_snapshot(const Instance& inst);

DeterminismVerdict determinism_check_snapshots(const Instance& inst, int runs,
                                               const SnapshotFn& snapshot);

// runs >= 2 repeats of solver_snapshot must be byte-identical.
DeterminismVerdict determinism_check(const Instance& inst, int runs);

// ---- verification suite ----

enum class VerifyStatus { Pass, Fail, FailExpected };

// "PASS", "FAIL", "FAIL-expected". The third marks properties where the
// oracle refutes the source formula or algorithm by design; those do not
// fail the suite.
std::string to_string(VerifyStatus s);

struct VerifyLine {
  std::string name;
  VerifyStatus status = VerifyStatus::Pass;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyLine> lines;

  bool ok() const;  // true iff no line is a plain Fail
};

struct VerifyOptions {
  int max_n = 8;     // exhaustive sweeps cover even n up to this, capped at 10
  uint64_t seed = 1;
};

VerifyReport verify_all(const VerifyOptions& opts = {});

std::string serialize_verify_report(const VerifyReport& report);

}  // namespace tripound
