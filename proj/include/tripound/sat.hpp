#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tripound/model.hpp"

namespace tripound {

// Propositional variables for element pairs: var(u,v) with u<v is
// u*n - u*(u+1)/2 + (v-u), a bijection onto 1..n(n-1)/2 that walks pairs in
// lexicographic order. Variable true <=> u and v share a row of the output.
struct VarMap {
  int n = 0;

  int var_count() const { return n * (n - 1) / 2; }
  int var_of(int u, int v) const;
  std::pair<int, int> pair_of(int var) const;
};

struct CnfFormula {
  int var_count = 0;
  std::vector<std::vector<int>> clauses;
  bool operator==(const CnfFormula&) const = default;
};

// Canonical clause order: one unit clause per forbidden pair in input order,
// then an at-least-one clause per element ascending, then pairwise
// at-most-one clauses per element ascending with partner combinations in
// ascending order.
std::pair<CnfFormula, VarMap> encode(const Instance& inst);

// Standard DIMACS CNF, byte-exact for the canonical clause order.
std::string write_dimacs(const CnfFormula& f);

struct DpllStats {
  long long branches = 0;
  long long propagations = 0;
  bool operator==(const DpllStats&) const = default;
};

struct DpllResult {
  bool sat = false;
  std::vector<bool> assignment;  // assignment[v-1] holds variable v
  DpllStats stats;
};

// Deterministic DPLL: unit propagation to fixpoint, branch on the lowest
// unassigned variable trying TRUE first, chronological backtracking, no
// pure-literal rule. Unconstrained variables come back FALSE.
DpllResult dpll_solve(const CnfFormula& f);

class MalformedModel : public std::runtime_error {
 public:
  explicit MalformedModel(const std::string& msg) : std::runtime_error(msg) {}
};

// Reads the true pair-variables back into rows, ascending variable id.
// Throws MalformedModel if they do not form a perfect pairing.
Pairing decode(const std::vector<bool>& assignment, const VarMap& vm);

}  // namespace tripound
