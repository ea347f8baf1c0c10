#include "tripound/sat.hpp"

#include <cassert>
#include <cstdlib>

namespace tripound {

int VarMap::var_of(int u, int v) const {
  if (u > v) std::swap(u, v);
  assert(0 <= u && u < v && v < n);
  return u * n - u * (u + 1) / 2 + (v - u);
}

std::pair<int, int> VarMap::pair_of(int var) const {
  assert(1 <= var && var <= var_count());
  int u = 0;
  int acc = 0;
  while (acc + (n - 1 - u) < var) {
    acc += n - 1 - u;
    ++u;
  }
  return {u, u + (var - acc)};
}

std::pair<CnfFormula, VarMap> encode(const Instance& inst) {
  const int n = inst.n();
  VarMap vm{n};
  CnfFormula f;
  f.var_count = vm.var_count();

  // Forbidden pairs, input order.
  for (auto [u, v] : inst.forbidden) f.clauses.push_back({-vm.var_of(u, v)});

  // Every element pairs with someone.
  for (int e = 0; e < n; ++e) {
    std::vector<int> clause;
    for (int p = 0; p < n; ++p)
      if (p != e) clause.push_back(vm.var_of(e, p));
    f.clauses.push_back(std::move(clause));
  }

  // ...and with at most one someone.
  for (int e = 0; e < n; ++e) {
    for (int x = 0; x < n; ++x) {
      if (x == e) continue;
      for (int y = x + 1; y < n; ++y) {
        if (y == e) continue;
        f.clauses.push_back({-vm.var_of(e, x), -vm.var_of(e, y)});
      }
    }
  }
  return {std::move(f), vm};
}

std::string write_dimacs(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.var_count) + " " +
                    std::to_string(f.clauses.size()) + "\n";
  for (const auto& clause : f.clauses) {
    for (int lit : clause) out += std::to_string(lit) + " ";
    out += "0\n";
  }
  return out;
}

namespace {

enum class Val : char { Unassigned, True, False };

struct DpllSearch {
  const CnfFormula& f;
  std::vector<Val> value;  // 1-based
  std::vector<int> trail;
  DpllStats stats;

  explicit DpllSearch(const CnfFormula& formula)
      : f(formula), value(static_cast<size_t>(formula.var_count) + 1, Val::Unassigned) {}

  bool assign(int lit) {
    int v = std::abs(lit);
    Val want = lit > 0 ? Val::True : Val::False;
    if (value[v] != Val::Unassigned) return value[v] == want;
    value[v] = want;
    trail.push_back(v);
    return true;
  }

  void rewind(size_t mark) {
    while (trail.size() > mark) {
      value[trail.back()] = Val::Unassigned;
      trail.pop_back();
    }
  }

  // Unit propagation to fixpoint. False on conflict.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : f.clauses) {
        int unassigned = 0;
        int unit_lit = 0;
        bool satisfied = false;
        for (int lit : clause) {
          Val v = value[std::abs(lit)];
          if (v == Val::Unassigned) {
            ++unassigned;
            unit_lit = lit;
          } else if ((lit > 0) == (v == Val::True)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          ++stats.propagations;
          if (!assign(unit_lit)) return false;
          changed = true;
        }
      }
    }
    return true;
  }

  bool all_satisfied() const {
    for (const auto& clause : f.clauses) {
      bool satisfied = false;
      for (int lit : clause) {
        Val v = value[std::abs(lit)];
        if (v != Val::Unassigned && (lit > 0) == (v == Val::True)) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) return false;
    }
    return true;
  }

  bool search() {
    if (!propagate()) return false;
    if (all_satisfied()) return true;  // leftover variables default FALSE
    int branch_var = 0;
    for (int v = 1; v <= f.var_count; ++v) {
      if (value[v] == Val::Unassigned) {
        branch_var = v;
        break;
      }
    }
    ++stats.branches;
    size_t mark = trail.size();
    assign(branch_var);
    if (search()) return true;
    rewind(mark);
    assign(-branch_var);
    if (search()) return true;
    rewind(mark);
    return false;
  }
};

}  // namespace

DpllResult dpll_solve(const CnfFormula& f) {
  DpllSearch search(f);
  DpllResult res;
  res.sat = search.search();
  res.stats = search.stats;
  if (res.sat) {
    res.assignment.assign(static_cast<size_t>(f.var_count), false);
    for (int v = 1; v <= f.var_count; ++v)
      res.assignment[v - 1] = search.value[v] == Val::True;
  }
  return res;
}

Pairing decode(const std::vector<bool>& assignment, const VarMap& vm) {
  Pairing p;
  std::vector<int> uses(vm.n, 0);
  for (int var = 1; var <= vm.var_count(); ++var) {
    if (!assignment[var - 1]) continue;
    auto [u, v] = vm.pair_of(var);
    p.rows.emplace_back(u, v);
    ++uses[u];
    ++uses[v];
  }
  for (int e = 0; e < vm.n; ++e) {
    if (uses[e] != 1)
      throw MalformedModel("element id " + std::to_string(e) + " used " +
                           std::to_string(uses[e]) + " times in model");
  }
  return p;
}

}  // namespace tripound
