#pragma once

// ASCII rendering of a compact machine-operator notation for matrix
// programs. Programs manipulate integer matrices and scalars through
// guarded loops, guarded statements, and named operators that inline at
// their call sites. The interpreter charges one step per matrix cell
// read, cell write, or comparison; scalar traffic and arithmetic are
// free. A bundled program reproduces the native three phase pairing
// solver on the standard S/I/D/F matrix layout.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tripound/model.hpp"

namespace tripound {

enum class BapErrorKind {
  Syntax,
  UndefinedOperator,
  UndefinedMatrix,
  UndefinedScalar,
  EmptyCell,
  IndexOutOfBounds,
  DivideByZero,
  StepCapExceeded,
};

std::string to_string(BapErrorKind k);

struct BapError : std::runtime_error {
  BapErrorKind kind;
  int line;  // 1-based position in the program text, 0 when unknown
  int col;
  BapError(BapErrorKind k, int line, int col, const std::string& msg);
};

// ---- AST ----
// Positions (line, col) ride along for error reports; equality is
// structural and ignores them.

enum class BinaryOp { Add, Sub, Mul, Div };
enum class RelOp { Lt, Le, Gt, Ge, Eq };
enum class ComboOp { And, Xor };

enum class ExprKind {
  IntLit,     // 42
  ScalarRef,  // k
  RowCount,   // $S$
  CellRef,    // S_(r, c), 0-based
  Binary,     // a + b; one precedence level, left associative
};

struct Expr {
  ExprKind kind = ExprKind::IntLit;
  long long value = 0;         // IntLit
  std::string name;            // ScalarRef, RowCount, CellRef
  std::unique_ptr<Expr> a, b;  // Binary operands; CellRef row and column
  BinaryOp op = BinaryOp::Add;
  int line = 0, col = 0;
};

bool operator==(const Expr& x, const Expr& y);

enum class GuardKind {
  Rel,         // lhs REL rhs
  Membership,  // expr in M, expr notin M (linear scan of M's cells)
  Combo,       // g & g short circuits, g xor g evaluates both sides
};

struct Guard {
  GuardKind kind = GuardKind::Rel;
  std::unique_ptr<Expr> lhs, rhs;  // Rel; Membership uses lhs only
  RelOp rel = RelOp::Lt;
  std::string matrix;              // Membership
  bool negated = false;            // notin
  std::unique_ptr<Guard> ga, gb;   // Combo
  ComboOp combo = ComboOp::And;
  int line = 0, col = 0;
};

bool operator==(const Guard& x, const Guard& y);

enum class StmtKind {
  Assign,     // k = expr, D_(r, c) = expr
  Loop,       // forall (guard) => body, guard retested before every pass
  Cond,       // guard => body, runs body once when the guard holds
  MachineOp,  // <M| op X> inlines operator op; X must be a declared matrix
  HaltIf,     // halt if guard stops the whole program
  Seq,        // backslash-joined statements at top level
};

struct Stmt {
  StmtKind kind = StmtKind::Assign;
  std::string name;                   // Assign target; MachineOp operator
  std::unique_ptr<Expr> row, column;  // set when the Assign target is a cell
  std::unique_ptr<Expr> value;        // Assign right side
  std::unique_ptr<Guard> guard;       // Loop, Cond, HaltIf
  std::vector<Stmt> body;             // Loop, Cond, Seq children
  std::string arg;                    // MachineOp language argument
  int line = 0, col = 0;
};

bool operator==(const Stmt& x, const Stmt& y);

struct BapProgram {
  std::vector<Stmt> statements;
  std::map<std::string, std::vector<Stmt>> operators;
};

bool operator==(const BapProgram& x, const BapProgram& y);

// Parses program text. "//" comments run to end of line. Operator
// definitions ("name *: stmts;") may sit anywhere between statements and
// are usable before they appear. Machine-operation names are resolved
// here; matrix names can only be checked against a state, so run_bap
// does that part. Throws BapError with kind Syntax or UndefinedOperator.
BapProgram parse_bap(std::string_view text);

// Canonical text: operator definitions first (name order), then the
// statements, one per line. Reparsing the result gives an equal program.
std::string print_bap(const BapProgram& prog);

// ---- state and execution ----

struct Matrix {
  int columns = 0;
  // Cells start empty; writing one past the last row appends a row.
  std::vector<std::vector<std::optional<long long>>> rows;

  long long row_count() const { return static_cast<long long>(rows.size()); }
  bool operator==(const Matrix&) const = default;
};

constexpr long long kDefaultStepCap = 10'000'000;

struct BapState {
  std::map<std::string, Matrix> matrices;
  std::map<std::string, long long> scalars;
  long long steps = 0;
  long long step_cap = kDefaultStepCap;

  bool operator==(const BapState&) const = default;
};

// Runs the program to completion or to a taken `halt if`. Every matrix
// the program mentions must be declared up front (checked before any
// statement runs); scalars come into being on first assignment. Throws
// BapError for undeclared matrices, out-of-range cell access, reads of
// empty cells or unset scalars, zero divisors, and exhaustion of the
// step cap. Loops that run without making step progress are cut off by a
// statement budget equal to the step cap, reported as StepCapExceeded.
BapState run_bap(const BapProgram& prog, BapState initial);

// Instance layout the bundled program works on: S holds one element id
// per row, I holds two mirrored rows per incompatible pair in input
// order ([x y] then [y x]), D (two columns) and F (one column) start
// with no rows.
BapState make_tripound_state(const Instance& inst,
                             long long step_cap = kDefaultStepCap);

// The shipped pairing program; same text as programs/tripound.bap.
const char* bundled_tripound_text();
BapProgram bundled_tripound();

// Reads matrix D of a finished state back into pairing rows. Throws
// std::runtime_error when D is missing, has incomplete rows, or holds
// ids outside the instance.
Pairing pairing_from_state(const BapState& state, const Instance& inst);

// One line per row, cells space separated. Ids render through `table`
// when given and in range, otherwise numerically; empty cells print ".".
std::string render_matrix(const BapState& state, const std::string& name,
                          const ElementTable* table = nullptr);

}  // namespace tripound
