#include <string>
#include <utility>

#include "tripound/bap.hpp"

namespace tripound {
namespace {

// Operator bodies inline at the call site, so mutual recursion burns
// stack; cut it off well before that becomes a crash.
constexpr int kMaxInlineDepth = 256;

struct HaltSignal {};

[[noreturn]] void fault(BapErrorKind k, int line, int col, const std::string& msg) {
  throw BapError(k, line, col, msg);
}

struct Runner {
  const BapProgram& prog;
  BapState& st;
  long long statements_run = 0;
  int inline_depth = 0;

  // One step per cell read, cell write, or comparison. The check runs
  // first so the counter never passes the cap.
  void charge(int line, int col) {
    if (st.steps >= st.step_cap)
      fault(BapErrorKind::StepCapExceeded, line, col,
            "step cap of " + std::to_string(st.step_cap) + " exceeded");
    ++st.steps;
  }

  Matrix& matrix(const std::string& name, int line, int col) {
    auto it = st.matrices.find(name);
    if (it == st.matrices.end())
      fault(BapErrorKind::UndefinedMatrix, line, col,
            "matrix '" + name + "' is not declared");
    return it->second;
  }

  long long eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit:
        return e.value;
      case ExprKind::ScalarRef: {
        auto it = st.scalars.find(e.name);
        if (it == st.scalars.end())
          fault(BapErrorKind::UndefinedScalar, e.line, e.col,
                "scalar '" + e.name + "' read before any assignment");
        return it->second;
      }
      case ExprKind::RowCount:
        return matrix(e.name, e.line, e.col).row_count();
      case ExprKind::CellRef: {
        const long long r = eval(*e.a);
        const long long c = eval(*e.b);
        const Matrix& m = matrix(e.name, e.line, e.col);
        if (r < 0 || r >= m.row_count() || c < 0 || c >= m.columns)
          fault(BapErrorKind::IndexOutOfBounds, e.line, e.col,
                e.name + "_(" + std::to_string(r) + ", " + std::to_string(c) +
                    ") is outside the matrix");
        charge(e.line, e.col);
        const auto& cell = m.rows[r][c];
        if (!cell)
          fault(BapErrorKind::EmptyCell, e.line, e.col,
                e.name + "_(" + std::to_string(r) + ", " + std::to_string(c) +
                    ") read while empty");
        return *cell;
      }
      case ExprKind::Binary: {
        const long long l = eval(*e.a);
        const long long r = eval(*e.b);
        switch (e.op) {
          case BinaryOp::Add: return l + r;
          case BinaryOp::Sub: return l - r;
          case BinaryOp::Mul: return l * r;
          case BinaryOp::Div:
            if (r == 0)
              fault(BapErrorKind::DivideByZero, e.line, e.col, "division by zero");
            return l / r;  // truncates toward zero
        }
      }
    }
    return 0;  // unreachable, all kinds handled above
  }

  bool test(const Guard& g) {
    switch (g.kind) {
      case GuardKind::Rel: {
        const long long l = eval(*g.lhs);
        const long long r = eval(*g.rhs);
        charge(g.line, g.col);
        switch (g.rel) {
          case RelOp::Lt: return l < r;
          case RelOp::Le: return l <= r;
          case RelOp::Gt: return l > r;
          case RelOp::Ge: return l >= r;
          case RelOp::Eq: return l == r;
        }
        return false;
      }
      case GuardKind::Membership: {
        // Linear scan, row major, stopping at the first hit. Empty cells
        // cost their read but never match.
        const long long v = eval(*g.lhs);
        const Matrix& m = matrix(g.matrix, g.line, g.col);
        bool found = false;
        for (const auto& row : m.rows) {
          for (const auto& cell : row) {
            charge(g.line, g.col);
            if (!cell) continue;
            charge(g.line, g.col);
            if (*cell == v) {
              found = true;
              break;
            }
          }
          if (found) break;
        }
        return found != g.negated;
      }
      case GuardKind::Combo: {
        if (g.combo == ComboOp::And) return test(*g.ga) && test(*g.gb);
        const bool a = test(*g.ga);
        const bool b = test(*g.gb);
        return a != b;
      }
    }
    return false;
  }

  void exec(const Stmt& s) {
    // Scalar-only loops make no step progress; a statement budget keeps
    // them from spinning forever.
    if (++statements_run > st.step_cap)
      fault(BapErrorKind::StepCapExceeded, s.line, s.col,
            "statement budget of " + std::to_string(st.step_cap) +
                " exhausted without step progress");
    switch (s.kind) {
      case StmtKind::Assign: {
        if (!s.row) {
          const long long v = eval(*s.value);
          st.scalars[s.name] = v;
          return;
        }
        const long long r = eval(*s.row);
        const long long c = eval(*s.column);
        const long long v = eval(*s.value);
        Matrix& m = matrix(s.name, s.line, s.col);
        if (r < 0 || r > m.row_count() || c < 0 || c >= m.columns)
          fault(BapErrorKind::IndexOutOfBounds, s.line, s.col,
                s.name + "_(" + std::to_string(r) + ", " + std::to_string(c) +
                    ") is outside the matrix");
        if (r == m.row_count())
          m.rows.emplace_back(static_cast<size_t>(m.columns));
        charge(s.line, s.col);
        m.rows[r][c] = v;
        return;
      }
      case StmtKind::Loop:
        while (test(*s.guard))
          for (const Stmt& child : s.body) exec(child);
        return;
      case StmtKind::Cond:
        if (test(*s.guard))
          for (const Stmt& child : s.body) exec(child);
        return;
      case StmtKind::MachineOp: {
        auto it = prog.operators.find(s.name);
        if (it == prog.operators.end())
          fault(BapErrorKind::UndefinedOperator, s.line, s.col,
                "operator '" + s.name + "' is not defined");
        matrix(s.arg, s.line, s.col);
        if (++inline_depth > kMaxInlineDepth)
          fault(BapErrorKind::StepCapExceeded, s.line, s.col,
                "operator inlining deeper than " +
                    std::to_string(kMaxInlineDepth) + " levels");
        for (const Stmt& child : it->second) exec(child);
        --inline_depth;
        return;
      }
      case StmtKind::HaltIf:
        if (test(*s.guard)) throw HaltSignal{};
        return;
      case StmtKind::Seq:
        for (const Stmt& child : s.body) exec(child);
        return;
    }
  }
};

// Every matrix reference is resolved against the initial state before the
// first statement runs, walking the program in order and then the
// operator bodies by name.
struct RefWalk {
  const BapState& st;

  void need(const std::string& name, int line, int col) const {
    if (!st.matrices.count(name))
      fault(BapErrorKind::UndefinedMatrix, line, col,
            "matrix '" + name + "' is not declared");
  }

  void expr(const Expr& e) const {
    if (e.kind == ExprKind::CellRef || e.kind == ExprKind::RowCount)
      need(e.name, e.line, e.col);
    if (e.a) expr(*e.a);
    if (e.b) expr(*e.b);
  }

  void guard(const Guard& g) const {
    if (g.kind == GuardKind::Membership) need(g.matrix, g.line, g.col);
    if (g.lhs) expr(*g.lhs);
    if (g.rhs) expr(*g.rhs);
    if (g.ga) guard(*g.ga);
    if (g.gb) guard(*g.gb);
  }

  void stmt(const Stmt& s) const {
    if (s.kind == StmtKind::Assign && s.row) need(s.name, s.line, s.col);
    if (s.kind == StmtKind::MachineOp) need(s.arg, s.line, s.col);
    if (s.row) expr(*s.row);
    if (s.column) expr(*s.column);
    if (s.value) expr(*s.value);
    if (s.guard) guard(*s.guard);
    for (const Stmt& child : s.body) stmt(child);
  }
};

}  // namespace

BapState run_bap(const BapProgram& prog, BapState initial) {
  RefWalk walk{initial};
  for (const Stmt& s : prog.statements) walk.stmt(s);
  for (const auto& [name, body] : prog.operators)
    for (const Stmt& s : body) walk.stmt(s);

  Runner runner{prog, initial};
  try {
    for (const Stmt& s : prog.statements) runner.exec(s);
  } catch (const HaltSignal&) {
  }
  return initial;
}

BapState make_tripound_state(const Instance& inst, long long step_cap) {
  BapState st;
  st.step_cap = step_cap;

  Matrix S;
  S.columns = 1;
  for (int e = 0; e < inst.n(); ++e)
    S.rows.push_back({static_cast<long long>(e)});

  Matrix I;
  I.columns = 2;
  for (const auto& [x, y] : inst.forbidden) {
    I.rows.push_back({static_cast<long long>(x), static_cast<long long>(y)});
    I.rows.push_back({static_cast<long long>(y), static_cast<long long>(x)});
  }

  Matrix D;
  D.columns = 2;
  Matrix F;
  F.columns = 1;

  st.matrices.emplace("S", std::move(S));
  st.matrices.emplace("I", std::move(I));
  st.matrices.emplace("D", std::move(D));
  st.matrices.emplace("F", std::move(F));
  return st;
}

Pairing pairing_from_state(const BapState& state, const Instance& inst) {
  auto it = state.matrices.find("D");
  if (it == state.matrices.end())
    throw std::runtime_error("state has no matrix D");
  Pairing out;
  for (const auto& row : it->second.rows) {
    if (row.size() < 2 || !row[0] || !row[1])
      throw std::runtime_error("matrix D has an incomplete row");
    const long long x = *row[0];
    const long long y = *row[1];
    if (x < 0 || x >= inst.n() || y < 0 || y >= inst.n())
      throw std::runtime_error("matrix D holds an id outside the instance");
    out.rows.emplace_back(static_cast<int>(x), static_cast<int>(y));
  }
  return out;
}

std::string render_matrix(const BapState& state, const std::string& name,
                          const ElementTable* table) {
  auto it = state.matrices.find(name);
  if (it == state.matrices.end()) return "";
  std::string out;
  for (const auto& row : it->second.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ' ';
      if (!row[c]) {
        out += '.';
        continue;
      }
      const long long v = *row[c];
      if (table && v >= 0 && v < static_cast<long long>(table->names.size()))
        out += table->names[static_cast<size_t>(v)];
      else
        out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

const char* bundled_tripound_text() {
  return R"BAP(// Pairing by machine operators, on the standard matrix layout:
//   S  element ids, one per row          I  incompatible pairs, two
//   D  the output grid, two columns         mirrored rows per pair
//   F  free elements, one column
// Subscripts are 0-based. The source notation writes its loops without
// increments; every line = line + 1 here is spelled out.

d *: D_(line, 0) = I_(line, 0);
v *: F_($F$, 0) = S_(line - 1, 0);

// (a) every incompatible element opens a row of D, pair order.
k = $I$;
line = 0;
forall (line < k) => <M| d D> \ line = line + 1;

// (b) elements free of incompatibilities collect into F, scan order.
// The source notation also runs k = k + 1 in this phase; with k frozen
// the scan already covers all of S, so that step is left out. Its h
// operator (shrinking I as matches are found) is an optimization with
// no effect on D and is left out as well.
k = $S$;
line = 0;
forall (line < k) => line = line + 1 \ (S_(line - 1, 0) notin I) => <M| v F>;

// (c) free elements close the open rows, then the leftovers pair among
// themselves. The source notation joins this phase's guards with xor
// and advances by line = line + line, neither of which can leave the
// starting state; both are replaced by the two plain loops below, and
// its closing halt guard is subsumed by the loop bounds.
k = $D$;
line = 0;
f = 0;
forall (line < k) => D_(line, 1) = F_(f, 0) \ f = f + 1 \ line = line + 1;
forall (f < $F$) => D_($D$, 0) = F_(f, 0) \ D_($D$ - 1, 1) = F_(f + 1, 0) \ f = f + 2;
)BAP";
}

BapProgram bundled_tripound() { return parse_bap(bundled_tripound_text()); }

}  // namespace tripound
