#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <utility>

#include "tripound/bap.hpp"
#include "tripound/counting.hpp"
#include "tripound/harness.hpp"
#include "tripound/sat.hpp"

namespace tripound {

uint64_t lcg_next(uint64_t state) { return state * kLcgMul + kLcgInc; }

Instance gen_instance(const GenSpec& spec) {
  if (spec.n <= 0 || spec.n % 2 != 0)
    throw SpecInvalid("element count must be positive and even");
  if (spec.i < 0 || 2 * spec.i > spec.n)
    throw SpecInvalid("forbidden pair count must satisfy 2i <= n");

  Lcg rng{spec.seed};
  std::vector<int> ids(static_cast<size_t>(spec.n));
  std::iota(ids.begin(), ids.end(), 0);
  for (int j = spec.n - 1; j >= 1; --j) {
    const int k = static_cast<int>(rng.below(static_cast<uint64_t>(j) + 1));
    std::swap(ids[static_cast<size_t>(j)], ids[static_cast<size_t>(k)]);
  }

  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < spec.i; ++p)
    pairs.emplace_back(ids[static_cast<size_t>(2 * p)], ids[static_cast<size_t>(2 * p + 1)]);

  std::vector<int> order;
  if (spec.incompatibles_first) {
    std::vector<char> taken(static_cast<size_t>(spec.n), 0);
    for (int p = 0; p < 2 * spec.i; ++p) {
      order.push_back(ids[static_cast<size_t>(p)]);
      taken[static_cast<size_t>(ids[static_cast<size_t>(p)])] = 1;
    }
    for (int e = 0; e < spec.n; ++e)
      if (!taken[static_cast<size_t>(e)]) order.push_back(e);
  } else {
    order.resize(static_cast<size_t>(spec.n));
    std::iota(order.begin(), order.end(), 0);
  }

  std::vector<std::string> names;
  names.reserve(order.size());
  for (int e : order) names.push_back("e" + std::to_string(e));
  std::vector<std::pair<std::string, std::string>> by_name;
  for (const auto& [x, y] : pairs)
    by_name.emplace_back("e" + std::to_string(x), "e" + std::to_string(y));
  return make_instance(names, by_name);
}

Instance make_numbered_instance(int n, const std::vector<std::pair<int, int>>& forbidden_ids) {
  std::vector<std::string> names;
  for (int e = 0; e < n; ++e) names.push_back("e" + std::to_string(e));
  std::vector<std::pair<std::string, std::string>> by_name;
  for (const auto& [x, y] : forbidden_ids)
    by_name.emplace_back("e" + std::to_string(x), "e" + std::to_string(y));
  return make_instance(names, by_name);
}

namespace {

void forbidden_rec(int n, int min_x, std::vector<char>& used,
                   std::vector<std::pair<int, int>>& cur,
                   std::vector<std::vector<std::pair<int, int>>>& out) {
  out.push_back(cur);
  for (int x = min_x; x < n; ++x) {
    if (used[static_cast<size_t>(x)]) continue;
    used[static_cast<size_t>(x)] = 1;
    for (int y = x + 1; y < n; ++y) {
      if (used[static_cast<size_t>(y)]) continue;
      used[static_cast<size_t>(y)] = 1;
      cur.emplace_back(x, y);
      forbidden_rec(n, x + 1, used, cur, out);
      cur.pop_back();
      used[static_cast<size_t>(y)] = 0;
    }
    used[static_cast<size_t>(x)] = 0;
  }
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> enumerate_forbidden_sets(int n) {
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<char> used(static_cast<size_t>(std::max(n, 0)), 0);
  std::vector<std::pair<int, int>> cur;
  forbidden_rec(n, 0, used, cur, out);
  return out;
}

FitResult fit_loglog(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("log-log fit needs at least two points");
  std::vector<double> xs, ys;
  for (const auto& [x, y] : points) {
    if (x <= 0 || y <= 0)
      throw std::invalid_argument("log-log fit needs positive coordinates");
    xs.push_back(std::log(x));
    ys.push_back(std::log(y));
  }
  const double nn = static_cast<double>(xs.size());
  const double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / nn;
  const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / nn;
  double sxx = 0, sxy = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - xbar) * (xs[k] - xbar);
    sxy += (xs[k] - xbar) * (ys[k] - ybar);
  }
  if (sxx == 0) throw std::invalid_argument("log-log fit needs spread in x");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  for (size_t k = 0; k < xs.size(); ++k)
    fit.max_residual = std::max(fit.max_residual,
                                std::abs(ys[k] - (fit.intercept + fit.slope * xs[k])));
  return fit;
}

ScalingReport measure_scaling(const std::vector<int>& sizes, ScanMode scan, uint64_t seed) {
  std::vector<int> ns = sizes;
  std::sort(ns.begin(), ns.end());
  ScalingReport rep;
  std::vector<std::pair<double, double>> xy;
  for (int n : ns) {
    if (n < 8 || n % 2 != 0)
      throw SpecInvalid("scaling sizes must be even and at least 8");
    const int i = n / 8;
    // seed + n, so any single size reproduces without rerunning the sweep
    Instance inst = gen_instance({n, i, seed + static_cast<uint64_t>(n), false});
    SolveResult res = tripound_solve(inst, SolveMode::Faithful, scan);
    rep.points.push_back({n, i, res.trace.total_steps(), res.trace.free_count});
    xy.emplace_back(static_cast<double>(n), static_cast<double>(res.trace.total_steps()));
  }
  const FitResult fit = fit_loglog(xy);
  rep.slope = fit.slope;
  rep.intercept = fit.intercept;
  rep.max_residual = fit.max_residual;
  return rep;
}

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string pad(std::string s, size_t width) {
  if (s.size() < width) s.resize(width, ' ');
  return s;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

}  // namespace

std::string serialize_scaling_report(const ScalingReport& report) {
  std::string out = pad("n", 8) + pad("i", 8) + pad("steps", 14) + "free\n";
  for (const ScalingPoint& p : report.points)
    out += pad(std::to_string(p.n), 8) + pad(std::to_string(p.i), 8) +
           pad(std::to_string(p.steps), 14) + std::to_string(p.free_count) + "\n";
  out += "slope        = " + fmt6(report.slope) + "\n";
  out += "intercept    = " + fmt6(report.intercept) + "\n";
  out += "max_residual = " + fmt6(report.max_residual) + "\n";
  return out;
}

std::string solver_snapshot(const Instance& inst) {
  std::string out;
  auto run_native = [&](SolveMode mode, ScanMode scan) {
    out += std::string("## ") + to_string(mode) + " " + to_string(scan) + "\n";
    try {
      SolveResult res = tripound_solve(inst, mode, scan);
      out += serialize_pairing(inst, res.pairing);
      out += serialize_trace(res.trace);
    } catch (const SolveError& e) {
      out += std::string("error: ") + e.what() + "\n";
    }
  };
  run_native(SolveMode::Faithful, ScanMode::Linear);
  run_native(SolveMode::Faithful, ScanMode::Indexed);
  run_native(SolveMode::Faithful, ScanMode::Prefix);
  run_native(SolveMode::Extended, ScanMode::Linear);

  out += "## bundled program\n";
  try {
    BapState fin = run_bap(bundled_tripound(), make_tripound_state(inst));
    out += render_matrix(fin, "D", &inst.table);
    out += "steps = " + std::to_string(fin.steps) + "\n";
  } catch (const BapError& e) {
    out += std::string("error: ") + e.what() + "\n";
  }
  return out;
}

DeterminismVerdict determinism_check_snapshots(const Instance& inst, int runs,
                                               const SnapshotFn& snapshot) {
  if (runs < 2) throw std::invalid_argument("determinism check needs at least two runs");
  DeterminismVerdict verdict;
  const std::string base = snapshot(inst, 0);
  for (int r = 1; r < runs; ++r) {
    const std::string cur = snapshot(inst, r);
    if (cur == base) continue;
    const auto a = split_lines(base);
    const auto b = split_lines(cur);
    size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    const std::string left = k < a.size() ? a[k] : "<end>";
    const std::string right = k < b.size() ? b[k] : "<end>";
    verdict.ok = false;
    verdict.divergence = "run " + std::to_string(r + 1) + " line " +
                         std::to_string(k + 1) + ": '" + left + "' vs '" + right + "'";
    return verdict;
  }
  return verdict;
}

DeterminismVerdict determinism_check(const Instance& inst, int runs) {
  return determinism_check_snapshots(
      inst, runs, [](const Instance& in, int) { return solver_snapshot(in); });
}

std::string to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Pass: return "PASS";
    case VerifyStatus::Fail: return "FAIL";
    case VerifyStatus::FailExpected: return "FAIL-expected";
  }
  return "?";
}

bool VerifyReport::ok() const {
  return std::none_of(lines.begin(), lines.end(), [](const VerifyLine& l) {
    return l.status == VerifyStatus::Fail;
  });
}

namespace {

std::string pair_list(const std::vector<std::pair<int, int>>& pairs) {
  std::string out;
  for (const auto& [x, y] : pairs)
    out += "(e" + std::to_string(x) + ",e" + std::to_string(y) + ")";
  return out.empty() ? "none" : out;
}

}  // namespace

VerifyReport verify_all(const VerifyOptions& opts) {
  VerifyReport rep;
  const int cap = std::min(opts.max_n, 10);
  std::vector<int> even_ns;
  for (int n = 2; n <= cap; n += 2) even_ns.push_back(n);

  auto add = [&rep](const std::string& name, bool pass, bool refutation_expected,
                    std::string detail) {
    const VerifyStatus st = pass ? VerifyStatus::Pass
                            : refutation_expected ? VerifyStatus::FailExpected
                                                  : VerifyStatus::Fail;
    rep.lines.push_back({name, st, std::move(detail)});
  };

  // SAT route against the matching enumerator, exhaustively.
  {
    long long checked = 0;
    std::string bad;
    for (int n : even_ns) {
      for (const auto& pairs : enumerate_forbidden_sets(n)) {
        const Instance inst = make_numbered_instance(n, pairs);
        auto [cnf, vm] = encode(inst);
        const DpllResult res = dpll_solve(cnf);
        const bool feasible = count_matchings_bruteforce(inst) > 0;
        ++checked;
        if (res.sat != feasible) {
          bad = "n=" + std::to_string(n) + " " + pair_list(pairs) + ": solver says " +
                (res.sat ? "sat" : "unsat") + ", enumerator says " +
                (feasible ? "feasible" : "infeasible");
          break;
        }
        if (res.sat && !check_pairing(inst, decode(res.assignment, vm)).valid()) {
          bad = "n=" + std::to_string(n) + " " + pair_list(pairs) +
                ": decoded model fails the pairing check";
          break;
        }
      }
      if (!bad.empty()) break;
    }
    add("sat-encoding-vs-matching-oracle", bad.empty(), false,
        bad.empty() ? std::to_string(checked) + " instances, solver and enumerator agree"
                    : bad);
  }

  // Faithful success must track the i <= n/4 threshold exactly.
  {
    long long checked = 0;
    std::string bad;
    for (int n : even_ns) {
      for (const auto& pairs : enumerate_forbidden_sets(n)) {
        const Instance inst = make_numbered_instance(n, pairs);
        bool solved = true;
        try {
          tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);
        } catch (const SolveError&) {
          solved = false;
        }
        ++checked;
        if (solved != feasibility_threshold(n, static_cast<int>(pairs.size()))) {
          bad = "n=" + std::to_string(n) + " i=" + std::to_string(pairs.size()) +
                ": faithful " + (solved ? "solved past" : "failed within") +
                " the threshold";
          break;
        }
      }
      if (!bad.empty()) break;
    }
    add("tripound-threshold-exact", bad.empty(), false,
        bad.empty() ? std::to_string(checked) + " instances match the 4i <= n rule" : bad);
  }

  // Within the threshold the extended route must not change anything.
  {
    long long checked = 0;
    std::string bad;
    for (int n : even_ns) {
      for (const auto& pairs : enumerate_forbidden_sets(n)) {
        if (!feasibility_threshold(n, static_cast<int>(pairs.size()))) continue;
        const Instance inst = make_numbered_instance(n, pairs);
        const SolveResult a = tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);
        const SolveResult b = tripound_solve(inst, SolveMode::Extended, ScanMode::Linear);
        ++checked;
        if (!(a.pairing == b.pairing) || b.trace.fallback_used) {
          bad = "n=" + std::to_string(n) + " " + pair_list(pairs) +
                ": extended diverged from faithful";
          break;
        }
      }
      if (!bad.empty()) break;
    }
    add("faithful-extended-agree-when-feasible", bad.empty(), false,
        bad.empty() ? std::to_string(checked) + " feasible instances, identical output" : bad);
  }

  // The bundled program against the native solver, seeded.
  {
    const int trials = 50;
    Lcg rng{opts.seed};
    std::string bad;
    for (int t = 0; t < trials && bad.empty(); ++t) {
      const int n = 2 * (1 + static_cast<int>(rng.below(20)));  // 2..40 even
      const int i = static_cast<int>(rng.below(static_cast<uint64_t>(n / 4) + 1));
      const Instance inst = gen_instance({n, i, rng.next(), false});
      const SolveResult native = tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);
      const BapState fin = run_bap(bundled_tripound(), make_tripound_state(inst));
      if (!(pairing_from_state(fin, inst) == native.pairing))
        bad = "trial " + std::to_string(t) + " (n=" + std::to_string(n) + ", i=" +
              std::to_string(i) + "): program grid differs from the native rows";
    }
    add("bap-native-equivalence", bad.empty(), false,
        bad.empty() ? std::to_string(trials) + " seeded instances, grids identical" : bad);
  }

  // Repeated runs must serialize byte-identically.
  {
    const int trials = 10;
    Lcg rng{opts.seed + 1};
    std::string bad;
    for (int t = 0; t < trials && bad.empty(); ++t) {
      const int n = 2 * (1 + static_cast<int>(rng.below(20)));
      const int i = static_cast<int>(rng.below(static_cast<uint64_t>(n / 2) + 1));
      const Instance inst = gen_instance({n, i, rng.next(), false});
      const DeterminismVerdict v = determinism_check(inst, 3);
      if (!v.ok) bad = "trial " + std::to_string(t) + ": " + v.divergence;
    }
    add("solver-determinism", bad.empty(), false,
        bad.empty() ? std::to_string(trials) + " instances x 3 runs, byte-identical" : bad);
  }

  // Fronted incompatibles must make the prefix scan strictly cheaper in
  // phase (b) than the linear scan.
  {
    std::string bad;
    long long checked = 0;
    for (int n = 16; n <= 40 && bad.empty(); n += 8) {
      for (int i = 2; 4 * i <= n && bad.empty(); ++i) {
        const Instance inst = gen_instance({n, i, opts.seed + static_cast<uint64_t>(n), true});
        const auto lin = tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);
        const auto pre = tripound_solve(inst, SolveMode::Faithful, ScanMode::Prefix);
        ++checked;
        if (pre.trace.steps_phase_b >= lin.trace.steps_phase_b)
          bad = "n=" + std::to_string(n) + " i=" + std::to_string(i) + ": prefix " +
                std::to_string(pre.trace.steps_phase_b) + " vs linear " +
                std::to_string(lin.trace.steps_phase_b);
      }
    }
    add("prefix-scan-beats-linear-on-fronted-instances", bad.empty(), false,
        bad.empty() ? std::to_string(checked) + " fronted instances, prefix strictly cheaper"
                    : bad);
  }

  // The closed-form count against brute force. Disagreement is the
  // documented outcome; these two lines are expected to read FAIL-expected.
  for (const PhiVariant variant : {PhiVariant::EvenStep, PhiVariant::UnitStep}) {
    long long cases = 0, agreed = 0;
    std::string first_gap;
    for (int n : even_ns) {
      if (n > 8) continue;  // keeps the brute-force side instant
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; 2 * i <= n; ++i) {
        const Instance inst = make_numbered_instance(n, pairs);
        const CountReport cr = compare_counts(inst, variant);
        ++cases;
        if (cr.agree) {
          ++agreed;
        } else if (first_gap.empty()) {
          first_gap = "first gap n=" + std::to_string(n) + " i=" + std::to_string(i) +
                      ": formula " + std::to_string(cr.phi_value) + " vs brute " +
                      std::to_string(cr.brute_arrangements);
        }
        pairs.emplace_back(2 * i, 2 * i + 1);
      }
    }
    const std::string name = variant == PhiVariant::EvenStep
                                 ? "even-step-formula-vs-brute-force"
                                 : "unit-step-formula-vs-brute-force";
    add(name, agreed == cases, true,
        std::to_string(agreed) + " of " + std::to_string(cases) + " cases agree" +
            (first_gap.empty() ? "" : "; " + first_gap));
  }

  // Faithful mode cannot cover every instance the enumerator can: past
  // i > n/4 it gives up even when a valid pairing exists.
  {
    std::string witness;
    long long feasible_total = 0, faithful_ok = 0;
    for (int n : even_ns) {
      for (const auto& pairs : enumerate_forbidden_sets(n)) {
        const Instance inst = make_numbered_instance(n, pairs);
        if (count_matchings_bruteforce(inst) == 0) continue;
        ++feasible_total;
        try {
          tripound_solve(inst, SolveMode::Faithful, ScanMode::Linear);
          ++faithful_ok;
        } catch (const SolveError&) {
          if (witness.empty())
            witness = "witness n=" + std::to_string(n) + " " + pair_list(pairs) +
                      " (i=" + std::to_string(pairs.size()) + " > n/4)";
        }
      }
    }
    add("faithful-covers-all-feasible", witness.empty(), true,
        std::to_string(faithful_ok) + " of " + std::to_string(feasible_total) +
            " feasible instances solved" + (witness.empty() ? "" : "; " + witness));
  }

  return rep;
}

std::string serialize_verify_report(const VerifyReport& report) {
  std::string out;
  for (const VerifyLine& l : report.lines)
    out += pad(l.name, 46) + pad(to_string(l.status), 15) + l.detail + "\n";
  out += pad("overall", 46) + (report.ok() ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace tripound
