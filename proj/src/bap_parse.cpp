#include <cctype>
#include <utility>

#include "tripound/bap.hpp"

namespace tripound {

std::string to_string(BapErrorKind k) {
  switch (k) {
    case BapErrorKind::Syntax: return "syntax";
    case BapErrorKind::UndefinedOperator: return "undefined-operator";
    case BapErrorKind::UndefinedMatrix: return "undefined-matrix";
    case BapErrorKind::UndefinedScalar: return "undefined-scalar";
    case BapErrorKind::EmptyCell: return "empty-cell";
    case BapErrorKind::IndexOutOfBounds: return "index-out-of-bounds";
    case BapErrorKind::DivideByZero: return "divide-by-zero";
    case BapErrorKind::StepCapExceeded: return "step-cap-exceeded";
  }
  return "unknown";
}

BapError::BapError(BapErrorKind k, int line_, int col_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ", col " +
                         std::to_string(col_) + ": " + msg),
      kind(k),
      line(line_),
      col(col_) {}

namespace {

enum class Tok {
  Ident, Int,
  Semi, Backslash, Comma, Colon, Star,
  Arrow, Assign, EqEq, Lt, Le, Gt, Ge,
  Plus, Minus, Slash,
  LParen, RParen, LSub,
  Dollar, Amp, Pipe,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  long long value = 0;
  int line = 1;
  int col = 1;
};

[[noreturn]] void fail(BapErrorKind k, int line, int col, const std::string& msg) {
  throw BapError(k, line, col, msg);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  auto take = [&](size_t upto) {
    while (i < upto) bump(src[i++]);
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') bump(src[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(src[i++]);
      continue;
    }
    const int tl = line, tc = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      std::string text(src.substr(i, j - i));
      if (text.size() > 18) fail(BapErrorKind::Syntax, tl, tc, "integer literal out of range");
      out.push_back({Tok::Int, text, std::stoll(text), tl, tc});
      take(j);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string text(src.substr(i, j - i));
      // A trailing underscore glued to "(" opens a subscript: S_(r, c).
      if (text.size() > 1 && text.back() == '_' && j < src.size() && src[j] == '(') {
        text.pop_back();
        out.push_back({Tok::Ident, text, 0, tl, tc});
        out.push_back({Tok::LSub, "_(", 0, tl, tc + static_cast<int>(text.size())});
        take(j + 1);
        continue;
      }
      out.push_back({Tok::Ident, text, 0, tl, tc});
      take(j);
      continue;
    }
    auto two = [&](char second) {
      return i + 1 < src.size() && src[i + 1] == second;
    };
    Tok kind;
    size_t len = 1;
    switch (c) {
      case ';': kind = Tok::Semi; break;
      case '\\': kind = Tok::Backslash; break;
      case ',': kind = Tok::Comma; break;
      case ':': kind = Tok::Colon; break;
      case '*': kind = Tok::Star; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '/': kind = Tok::Slash; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '$': kind = Tok::Dollar; break;
      case '&': kind = Tok::Amp; break;
      case '|': kind = Tok::Pipe; break;
      case '=':
        if (two('=')) { kind = Tok::EqEq; len = 2; }
        else if (two('>')) { kind = Tok::Arrow; len = 2; }
        else kind = Tok::Assign;
        break;
      case '<':
        if (two('=')) { kind = Tok::Le; len = 2; }
        else kind = Tok::Lt;
        break;
      case '>':
        if (two('=')) { kind = Tok::Ge; len = 2; }
        else kind = Tok::Gt;
        break;
      default:
        fail(BapErrorKind::Syntax, tl, tc,
             std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(src.substr(i, len)), 0, tl, tc});
    take(i + len);
  }
  out.push_back({Tok::End, "", 0, line, col});
  return out;
}

struct Parser {
  const std::vector<Token>& toks;
  size_t p = 0;

  const Token& cur() const { return toks[p]; }
  bool at(Tok k) const { return toks[p].kind == k; }
  bool ident_is(const char* s) const {
    return at(Tok::Ident) && cur().text == s;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++p;
    return true;
  }
  Token eat(Tok k, const char* what) {
    if (!at(k))
      fail(BapErrorKind::Syntax, cur().line, cur().col,
           std::string("expected ") + what);
    return toks[p++];
  }

  std::unique_ptr<Expr> parse_term() {
    auto node = std::make_unique<Expr>();
    node->line = cur().line;
    node->col = cur().col;
    if (at(Tok::Int)) {
      node->kind = ExprKind::IntLit;
      node->value = toks[p++].value;
      return node;
    }
    if (accept(Tok::Dollar)) {
      node->kind = ExprKind::RowCount;
      node->name = eat(Tok::Ident, "a matrix name").text;
      eat(Tok::Dollar, "closing '$'");
      return node;
    }
    if (accept(Tok::LParen)) {
      auto inner = parse_expr();
      eat(Tok::RParen, "')'");
      return inner;
    }
    if (at(Tok::Ident)) {
      Token id = toks[p++];
      if (accept(Tok::LSub)) {
        node->kind = ExprKind::CellRef;
        node->name = id.text;
        node->a = parse_expr();
        eat(Tok::Comma, "','");
        node->b = parse_expr();
        eat(Tok::RParen, "')'");
        return node;
      }
      node->kind = ExprKind::ScalarRef;
      node->name = id.text;
      return node;
    }
    fail(BapErrorKind::Syntax, cur().line, cur().col, "expected an expression");
  }

  std::unique_ptr<Expr> parse_expr() {
    auto left = parse_term();
    for (;;) {
      BinaryOp op;
      if (at(Tok::Plus)) op = BinaryOp::Add;
      else if (at(Tok::Minus)) op = BinaryOp::Sub;
      else if (at(Tok::Star)) op = BinaryOp::Mul;
      else if (at(Tok::Slash)) op = BinaryOp::Div;
      else return left;
      auto node = std::make_unique<Expr>();
      node->kind = ExprKind::Binary;
      node->op = op;
      node->line = cur().line;
      node->col = cur().col;
      ++p;
      node->a = std::move(left);
      node->b = parse_term();
      left = std::move(node);
    }
  }

  std::unique_ptr<Guard> parse_gterm() {
    if (at(Tok::LParen)) {
      // Could be a parenthesized guard or the left expression of a
      // comparison; try the guard reading first and back off on failure.
      const size_t save = p;
      ++p;
      try {
        auto inner = parse_guard();
        eat(Tok::RParen, "')'");
        return inner;
      } catch (const BapError&) {
        p = save;
      }
    }
    auto g = std::make_unique<Guard>();
    g->line = cur().line;
    g->col = cur().col;
    g->lhs = parse_expr();
    if (ident_is("in") || ident_is("notin")) {
      g->kind = GuardKind::Membership;
      g->negated = cur().text == "notin";
      ++p;
      g->matrix = eat(Tok::Ident, "a matrix name").text;
      return g;
    }
    g->kind = GuardKind::Rel;
    if (accept(Tok::Lt)) g->rel = RelOp::Lt;
    else if (accept(Tok::Le)) g->rel = RelOp::Le;
    else if (accept(Tok::Gt)) g->rel = RelOp::Gt;
    else if (accept(Tok::Ge)) g->rel = RelOp::Ge;
    else if (accept(Tok::EqEq)) g->rel = RelOp::Eq;
    else
      fail(BapErrorKind::Syntax, cur().line, cur().col,
           "expected a comparison or membership test");
    g->rhs = parse_expr();
    return g;
  }

  std::unique_ptr<Guard> parse_guard() {
    auto left = parse_gterm();
    for (;;) {
      ComboOp op;
      if (at(Tok::Amp)) op = ComboOp::And;
      else if (ident_is("xor")) op = ComboOp::Xor;
      else return left;
      auto node = std::make_unique<Guard>();
      node->kind = GuardKind::Combo;
      node->combo = op;
      node->line = cur().line;
      node->col = cur().col;
      ++p;
      node->ga = std::move(left);
      node->gb = parse_gterm();
      left = std::move(node);
    }
  }

  Stmt parse_stmt() {
    Stmt s;
    s.line = cur().line;
    s.col = cur().col;
    if (ident_is("forall")) {
      ++p;
      eat(Tok::LParen, "'('");
      s.kind = StmtKind::Loop;
      s.guard = parse_guard();
      eat(Tok::RParen, "')'");
      eat(Tok::Arrow, "'=>'");
      s.body = parse_stmtseq();
      return s;
    }
    if (ident_is("halt")) {
      ++p;
      if (!ident_is("if"))
        fail(BapErrorKind::Syntax, cur().line, cur().col, "expected 'if'");
      ++p;
      s.kind = StmtKind::HaltIf;
      s.guard = parse_guard();
      return s;
    }
    if (at(Tok::Lt)) {
      ++p;
      if (!ident_is("M"))
        fail(BapErrorKind::Syntax, cur().line, cur().col, "expected 'M'");
      ++p;
      eat(Tok::Pipe, "'|'");
      s.kind = StmtKind::MachineOp;
      s.name = eat(Tok::Ident, "an operator name").text;
      s.arg = eat(Tok::Ident, "a matrix name").text;
      eat(Tok::Gt, "'>'");
      return s;
    }
    // Assignment or guarded statement. Both can open with an identifier,
    // so try the assignment reading and back off if no '=' turns up.
    if (at(Tok::Ident)) {
      const size_t save = p;
      bool committed = false;
      try {
        Token id = toks[p++];
        std::unique_ptr<Expr> row, column;
        if (accept(Tok::LSub)) {
          row = parse_expr();
          eat(Tok::Comma, "','");
          column = parse_expr();
          eat(Tok::RParen, "')'");
        }
        eat(Tok::Assign, "'='");
        committed = true;
        s.kind = StmtKind::Assign;
        s.name = id.text;
        s.row = std::move(row);
        s.column = std::move(column);
        s.value = parse_expr();
        return s;
      } catch (const BapError&) {
        if (committed) throw;  // bad right side of a real assignment
        p = save;
      }
    }
    s.kind = StmtKind::Cond;
    s.guard = parse_guard();
    eat(Tok::Arrow, "'=>'");
    s.body = parse_stmtseq();
    return s;
  }

  std::vector<Stmt> parse_stmtseq() {
    std::vector<Stmt> seq;
    seq.push_back(parse_stmt());
    while (accept(Tok::Backslash)) seq.push_back(parse_stmt());
    return seq;
  }

  BapProgram parse_program() {
    BapProgram prog;
    while (!at(Tok::End)) {
      if (at(Tok::Ident) && p + 2 < toks.size() &&
          toks[p + 1].kind == Tok::Star && toks[p + 2].kind == Tok::Colon) {
        Token id = toks[p];
        p += 3;
        if (prog.operators.count(id.text))
          fail(BapErrorKind::Syntax, id.line, id.col,
               "operator '" + id.text + "' defined twice");
        auto body = parse_stmtseq();
        eat(Tok::Semi, "';'");
        prog.operators.emplace(id.text, std::move(body));
        continue;
      }
      auto seq = parse_stmtseq();
      eat(Tok::Semi, "';'");
      if (seq.size() == 1) {
        prog.statements.push_back(std::move(seq.front()));
      } else {
        Stmt s;
        s.kind = StmtKind::Seq;
        s.line = seq.front().line;
        s.col = seq.front().col;
        s.body = std::move(seq);
        prog.statements.push_back(std::move(s));
      }
    }
    return prog;
  }
};

void check_operator_refs(const std::vector<Stmt>& stmts, const BapProgram& prog) {
  for (const Stmt& s : stmts) {
    if (s.kind == StmtKind::MachineOp && !prog.operators.count(s.name))
      fail(BapErrorKind::UndefinedOperator, s.line, s.col,
           "operator '" + s.name + "' is not defined");
    check_operator_refs(s.body, prog);
  }
}

}  // namespace

BapProgram parse_bap(std::string_view text) {
  auto toks = lex(text);
  Parser parser{toks};
  BapProgram prog = parser.parse_program();
  check_operator_refs(prog.statements, prog);
  for (const auto& [name, body] : prog.operators) check_operator_refs(body, prog);
  return prog;
}

// ---- structural equality, positions ignored ----

namespace {

template <typename T>
bool ptr_eq(const std::unique_ptr<T>& x, const std::unique_ptr<T>& y) {
  if (!x || !y) return !x && !y;
  return *x == *y;
}

}  // namespace

bool operator==(const Expr& x, const Expr& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case ExprKind::IntLit: return x.value == y.value;
    case ExprKind::ScalarRef:
    case ExprKind::RowCount: return x.name == y.name;
    case ExprKind::CellRef:
      return x.name == y.name && ptr_eq(x.a, y.a) && ptr_eq(x.b, y.b);
    case ExprKind::Binary:
      return x.op == y.op && ptr_eq(x.a, y.a) && ptr_eq(x.b, y.b);
  }
  return false;
}

bool operator==(const Guard& x, const Guard& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case GuardKind::Rel:
      return x.rel == y.rel && ptr_eq(x.lhs, y.lhs) && ptr_eq(x.rhs, y.rhs);
    case GuardKind::Membership:
      return x.negated == y.negated && x.matrix == y.matrix &&
             ptr_eq(x.lhs, y.lhs);
    case GuardKind::Combo:
      return x.combo == y.combo && ptr_eq(x.ga, y.ga) && ptr_eq(x.gb, y.gb);
  }
  return false;
}

bool operator==(const Stmt& x, const Stmt& y) {
  return x.kind == y.kind && x.name == y.name && x.arg == y.arg &&
         ptr_eq(x.row, y.row) && ptr_eq(x.column, y.column) &&
         ptr_eq(x.value, y.value) && ptr_eq(x.guard, y.guard) &&
         x.body == y.body;
}

bool operator==(const BapProgram& x, const BapProgram& y) {
  return x.statements == y.statements && x.operators == y.operators;
}

// ---- canonical text ----

namespace {

void print_expr(std::string& out, const Expr& e) {
  switch (e.kind) {
    case ExprKind::IntLit:
      out += std::to_string(e.value);
      return;
    case ExprKind::ScalarRef:
      out += e.name;
      return;
    case ExprKind::RowCount:
      out += "$" + e.name + "$";
      return;
    case ExprKind::CellRef:
      out += e.name + "_(";
      print_expr(out, *e.a);
      out += ", ";
      print_expr(out, *e.b);
      out += ")";
      return;
    case ExprKind::Binary: {
      print_expr(out, *e.a);
      switch (e.op) {
        case BinaryOp::Add: out += " + "; break;
        case BinaryOp::Sub: out += " - "; break;
        case BinaryOp::Mul: out += " * "; break;
        case BinaryOp::Div: out += " / "; break;
      }
      // The chain is left associative, so only a composite right side
      // needs wrapping to read back with the same shape.
      const bool wrap = e.b->kind == ExprKind::Binary;
      if (wrap) out += "(";
      print_expr(out, *e.b);
      if (wrap) out += ")";
      return;
    }
  }
}

void print_guard(std::string& out, const Guard& g) {
  switch (g.kind) {
    case GuardKind::Rel: {
      print_expr(out, *g.lhs);
      switch (g.rel) {
        case RelOp::Lt: out += " < "; break;
        case RelOp::Le: out += " <= "; break;
        case RelOp::Gt: out += " > "; break;
        case RelOp::Ge: out += " >= "; break;
        case RelOp::Eq: out += " == "; break;
      }
      print_expr(out, *g.rhs);
      return;
    }
    case GuardKind::Membership:
      print_expr(out, *g.lhs);
      out += g.negated ? " notin " : " in ";
      out += g.matrix;
      return;
    case GuardKind::Combo: {
      print_guard(out, *g.ga);
      out += g.combo == ComboOp::And ? " & " : " xor ";
      const bool wrap = g.gb->kind == GuardKind::Combo;
      if (wrap) out += "(";
      print_guard(out, *g.gb);
      if (wrap) out += ")";
      return;
    }
  }
}

void print_stmt(std::string& out, const Stmt& s);

void print_body(std::string& out, const std::vector<Stmt>& body) {
  for (size_t i = 0; i < body.size(); ++i) {
    if (i) out += " \\ ";
    print_stmt(out, body[i]);
  }
}

void print_stmt(std::string& out, const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Assign:
      out += s.name;
      if (s.row) {
        out += "_(";
        print_expr(out, *s.row);
        out += ", ";
        print_expr(out, *s.column);
        out += ")";
      }
      out += " = ";
      print_expr(out, *s.value);
      return;
    case StmtKind::Loop:
      out += "forall (";
      print_guard(out, *s.guard);
      out += ") => ";
      print_body(out, s.body);
      return;
    case StmtKind::Cond:
      print_guard(out, *s.guard);
      out += " => ";
      print_body(out, s.body);
      return;
    case StmtKind::MachineOp:
      out += "<M| " + s.name + " " + s.arg + ">";
      return;
    case StmtKind::HaltIf:
      out += "halt if ";
      print_guard(out, *s.guard);
      return;
    case StmtKind::Seq:
      print_body(out, s.body);
      return;
  }
}

}  // namespace

std::string print_bap(const BapProgram& prog) {
  std::string out;
  for (const auto& [name, body] : prog.operators) {
    out += name + " *: ";
    print_body(out, body);
    out += ";\n";
  }
  for (const Stmt& s : prog.statements) {
    print_stmt(out, s);
    out += ";\n";
  }
  return out;
}

}  // namespace tripound
