#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tripound {

enum class ParseErrorKind {
  Syntax,
  DuplicateElement,
  UnknownElementInPair,
  ElementInTwoPairs,
  SelfPair,
  OddElementCount,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& msg)
      : std::runtime_error(msg), kind_(kind), line_(line) {}
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

// Element names in declaration order; ids are dense 0-based indices into it.
struct ElementTable {
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index_of;

  int size() const { return static_cast<int>(names.size()); }
  // Returns the element id, or -1 if the name is unknown.
  int id_of(const std::string& name) const {
    auto it = index_of.find(name);
    return it == index_of.end() ? -1 : it->second;
  }
};

// A problem instance: the element universe plus disjoint incompatible pairs.
// Every element belongs to at most one incompatible pair; partner[] maps an
// element to its forbidden partner (-1 when it has none) and is symmetric.
struct Instance {
  ElementTable table;
  std::vector<std::pair<int, int>> forbidden;  // declaration order
  std::vector<int> partner;                    // id -> partner id, -1 = none

  int n() const { return table.size(); }
  int partner_of(int id) const { return partner[static_cast<size_t>(id)]; }

  bool operator==(const Instance& o) const {
    return table.names == o.table.names && forbidden == o.forbidden;
  }
};

// Builds a validated Instance. Throws ParseError (line 0) on any invariant
// violation: duplicate names, odd element count, unknown/self/overlapping
// pairs.
Instance make_instance(const std::vector<std::string>& names,
                       const std::vector<std::pair<std::string, std::string>>& incompatible);

// Instance file format: '#' starts a comment, blank lines are ignored,
// exactly one "elements <tok> ..." line followed by zero or more
// "incompatible <tok> <tok>" lines. Errors carry the offending line number.
Instance parse_instance(const std::string& text);

std::string serialize_instance(const Instance& inst);

// The N x 2 output: n/2 rows of (left, right) element ids.
struct Pairing {
  std::vector<std::pair<int, int>> rows;
  bool operator==(const Pairing&) const = default;
};

// One "<left-token> <right-token>" line per row, in row order.
std::string serialize_pairing(const Instance& inst, const Pairing& p);

enum class ViolationKind { OutOfRange, ForbiddenRow, ReusedElement, MissingElement };

struct Violation {
  ViolationKind kind;
  int row;      // offending row, -1 when not row-specific
  int element;  // offending element id, -1 when not element-specific
  bool operator==(const Violation&) const = default;
};

struct CheckResult {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

// Valid iff no row pairs two incompatible elements and every element of the
// universe appears exactly once. Order of rows and order within a row do not
// matter here.
CheckResult check_pairing(const Instance& inst, const Pairing& p);

std::string describe(const Instance& inst, const Violation& v);

}  // namespace tripound
