#pragma once

// Shared helpers for the test binaries. The checkers here are written from
// scratch against the documented behavior, on purpose: they must not reuse
// library code whose correctness is under test.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tripound/model.hpp"

namespace testsupport {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string golden_path(const std::string& name) {
  return std::string(TRIPOUND_GOLDEN_DIR) + "/" + name;
}

inline std::string program_path(const std::string& name) {
  return std::string(TRIPOUND_PROGRAM_DIR) + "/" + name;
}

// Independent validity oracle: every id 0..n-1 exactly once, no row holds an
// incompatible pair. Deliberately does not call tripound::check_pairing.
inline bool oracle_valid(const tripound::Instance& inst, const tripound::Pairing& p) {
  std::vector<int> seen(static_cast<size_t>(inst.n()), 0);
  std::set<std::pair<int, int>> bad;
  for (auto [x, y] : inst.forbidden) {
    bad.insert({std::min(x, y), std::max(x, y)});
  }
  for (auto [l, r] : p.rows) {
    if (l < 0 || l >= inst.n() || r < 0 || r >= inst.n()) return false;
    seen[static_cast<size_t>(l)]++;
    seen[static_cast<size_t>(r)]++;
    if (bad.count({std::min(l, r), std::max(l, r)})) return false;
  }
  for (int c : seen) {
    if (c != 1) return false;
  }
  return true;
}

// Minimal DIMACS reader for round-trip checks. Returns {var_count, clauses},
// each clause the literals before its terminating 0.
struct ParsedCnf {
  int var_count = 0;
  int clause_count = 0;
  std::vector<std::vector<int>> clauses;
};

inline ParsedCnf parse_dimacs(const std::string& text) {
  ParsedCnf out;
  std::istringstream in(text);
  std::string tok;
  if (!(in >> tok) || tok != "p") throw std::runtime_error("missing p line");
  if (!(in >> tok) || tok != "cnf") throw std::runtime_error("missing cnf tag");
  if (!(in >> out.var_count >> out.clause_count)) throw std::runtime_error("bad header");
  std::vector<int> cur;
  int lit = 0;
  while (in >> lit) {
    if (lit == 0) {
      out.clauses.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(lit);
    }
  }
  if (!cur.empty()) throw std::runtime_error("unterminated clause");
  return out;
}

// True iff the assignment (1-based variable -> value) satisfies every clause.
inline bool satisfies(const ParsedCnf& f, const std::vector<bool>& assignment) {
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      int v = lit > 0 ? lit : -lit;
      bool val = assignment[static_cast<size_t>(v - 1)];
      if ((lit > 0) == val) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

// Runs the installed CLI with the given argument string through the shell.
inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string("'") + TRIPOUND_CLI_PATH + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  CliResult res;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
    res.output.append(buf, got);
  }
  int status = pclose(pipe);
  res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return res;
}

inline std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = std::string("/tmp/tripound_test_") + name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
  return path;
}

}  // namespace testsupport
