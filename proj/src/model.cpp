#include "tripound/model.hpp"

#include <algorithm>
#include <sstream>

namespace tripound {

namespace {

// Shared pair validation for parsed and programmatically built instances.
void add_forbidden_pair(Instance& inst, int u, int v, int line) {
  if (u == v)
    throw ParseError(ParseErrorKind::SelfPair, line,
                     "line " + std::to_string(line) + ": element '" + inst.table.names[u] +
                         "' paired with itself");
  for (int e : {u, v}) {
    if (inst.partner[e] != -1)
      throw ParseError(ParseErrorKind::ElementInTwoPairs, line,
                       "line " + std::to_string(line) + ": element '" + inst.table.names[e] +
                           "' appears in two incompatible pairs");
  }
  inst.forbidden.emplace_back(u, v);
  inst.partner[u] = v;
  inst.partner[v] = u;
}

void set_elements(Instance& inst, const std::vector<std::string>& names, int line) {
  for (const auto& name : names) {
    if (inst.table.index_of.count(name))
      throw ParseError(ParseErrorKind::DuplicateElement, line,
                       "line " + std::to_string(line) + ": duplicate element '" + name + "'");
    inst.table.index_of[name] = inst.table.size();
    inst.table.names.push_back(name);
  }
  if (inst.n() % 2 != 0)
    throw ParseError(ParseErrorKind::OddElementCount, line,
                     "line " + std::to_string(line) + ": odd element count " +
                         std::to_string(inst.n()));
  inst.partner.assign(inst.n(), -1);
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::istringstream iss(s);
  std::vector<std::string> toks;
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

Instance make_instance(const std::vector<std::string>& names,
                       const std::vector<std::pair<std::string, std::string>>& incompatible) {
  Instance inst;
  set_elements(inst, names, 0);
  for (const auto& [a, b] : incompatible) {
    int u = inst.table.id_of(a);
    int v = inst.table.id_of(b);
    if (u < 0 || v < 0)
      throw ParseError(ParseErrorKind::UnknownElementInPair, 0,
                       "unknown element '" + (u < 0 ? a : b) + "' in incompatible pair");
    add_forbidden_pair(inst, u, v, 0);
  }
  return inst;
}

Instance parse_instance(const std::string& text) {
  Instance inst;
  bool have_elements = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = split_tokens(raw);
    if (toks.empty()) continue;
    if (toks[0] == "elements") {
      if (have_elements)
        throw ParseError(ParseErrorKind::Syntax, lineno,
                         "line " + std::to_string(lineno) + ": duplicate 'elements' line");
      if (toks.size() < 2)
        throw ParseError(ParseErrorKind::Syntax, lineno,
                         "line " + std::to_string(lineno) + ": 'elements' line names no elements");
      set_elements(inst, {toks.begin() + 1, toks.end()}, lineno);
      have_elements = true;
    } else if (toks[0] == "incompatible") {
      if (!have_elements)
        throw ParseError(ParseErrorKind::Syntax, lineno,
                         "line " + std::to_string(lineno) +
                             ": 'incompatible' before 'elements' line");
      if (toks.size() != 3)
        throw ParseError(ParseErrorKind::Syntax, lineno,
                         "line " + std::to_string(lineno) +
                             ": expected 'incompatible <tok> <tok>'");
      int u = inst.table.id_of(toks[1]);
      int v = inst.table.id_of(toks[2]);
      if (u < 0 || v < 0)
        throw ParseError(ParseErrorKind::UnknownElementInPair, lineno,
                         "line " + std::to_string(lineno) + ": unknown element '" +
                             (u < 0 ? toks[1] : toks[2]) + "'");
      add_forbidden_pair(inst, u, v, lineno);
    } else {
      throw ParseError(ParseErrorKind::Syntax, lineno,
                       "line " + std::to_string(lineno) + ": unknown directive '" + toks[0] + "'");
    }
  }
  if (!have_elements)
    throw ParseError(ParseErrorKind::Syntax, lineno, "missing 'elements' line");
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::string out = "elements";
  for (const auto& name : inst.table.names) {
    out += ' ';
    out += name;
  }
  out += '\n';
  for (const auto& [u, v] : inst.forbidden) {
    out += "incompatible " + inst.table.names[u] + ' ' + inst.table.names[v] + '\n';
  }
  return out;
}

std::string serialize_pairing(const Instance& inst, const Pairing& p) {
  std::string out;
  for (const auto& [l, r] : p.rows) {
    out += inst.table.names[l] + ' ' + inst.table.names[r] + '\n';
  }
  return out;
}

CheckResult check_pairing(const Instance& inst, const Pairing& p) {
  CheckResult res;
  const int n = inst.n();
  std::vector<int> uses(n, 0);
  for (size_t r = 0; r < p.rows.size(); ++r) {
    auto [x, y] = p.rows[r];
    bool in_range = true;
    for (int e : {x, y}) {
      if (e < 0 || e >= n) {
        res.violations.push_back({ViolationKind::OutOfRange, static_cast<int>(r), e});
        in_range = false;
      } else {
        ++uses[e];
      }
    }
    if (in_range && inst.partner_of(x) == y)
      res.violations.push_back({ViolationKind::ForbiddenRow, static_cast<int>(r), x});
  }
  for (int e = 0; e < n; ++e) {
    if (uses[e] > 1)
      res.violations.push_back({ViolationKind::ReusedElement, -1, e});
    else if (uses[e] == 0)
      res.violations.push_back({ViolationKind::MissingElement, -1, e});
  }
  return res;
}

std::string describe(const Instance& inst, const Violation& v) {
  switch (v.kind) {
    case ViolationKind::OutOfRange:
      return "row " + std::to_string(v.row) + ": element id " + std::to_string(v.element) +
             " out of range";
    case ViolationKind::ForbiddenRow:
      return "row " + std::to_string(v.row) + ": incompatible pair '" +
             inst.table.names[v.element] + " " + inst.table.names[inst.partner_of(v.element)] +
             "'";
    case ViolationKind::ReusedElement:
      return "element '" + inst.table.names[v.element] + "' used more than once";
    case ViolationKind::MissingElement:
      return "element '" + inst.table.names[v.element] + "' missing";
  }
  return "unknown violation";
}

}  // namespace tripound
