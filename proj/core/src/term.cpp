#include "quadpat/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace quadpat {

TermPtr t_var(int index) {
  if (index < 0) throw std::invalid_argument("t_var: negative index");
  auto t = std::make_shared<TermExpr>();
  t->kind = TermExpr::Kind::Var;
  t->var = index;
  return t;
}

TermPtr t_const(Rational value) {
  auto t = std::make_shared<TermExpr>();
  t->kind = TermExpr::Kind::Const;
  t->value = std::move(value);
  return t;
}

static TermPtr make_bin(TermExpr::Kind k, TermPtr a, TermPtr b) {
  auto t = std::make_shared<TermExpr>();
  t->kind = k;
  t->lhs = std::move(a);
  t->rhs = std::move(b);
  return t;
}

TermPtr t_add(TermPtr a, TermPtr b) { return make_bin(TermExpr::Kind::Add, std::move(a), std::move(b)); }
TermPtr t_mul(TermPtr a, TermPtr b) { return make_bin(TermExpr::Kind::Mul, std::move(a), std::move(b)); }

int max_var_index(const TermPtr& t) {
  switch (t->kind) {
    case TermExpr::Kind::Var:
      return t->var;
    case TermExpr::Kind::Const:
      return -1;
    default:
      return std::max(max_var_index(t->lhs), max_var_index(t->rhs));
  }
}

std::string to_prefix(const TermPtr& t) {
  switch (t->kind) {
    case TermExpr::Kind::Var:
      return "x" + std::to_string(t->var);
    case TermExpr::Kind::Const:
      return t->value.str();
    case TermExpr::Kind::Add:
      return "(+ " + to_prefix(t->lhs) + " " + to_prefix(t->rhs) + ")";
    case TermExpr::Kind::Mul:
      return "(* " + to_prefix(t->lhs) + " " + to_prefix(t->rhs) + ")";
  }
  return "?";
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("term parse error at offset " + std::to_string(pos) + ": " + what);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  std::string_view atom() {
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start) fail("expected atom");
    return text.substr(start, pos - start);
  }

  TermPtr expr() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      skip_ws();
      std::string_view op = atom();
      if (op != "+" && op != "*") fail("operator must be + or *");
      std::vector<TermPtr> args;
      while (true) {
        skip_ws();
        if (pos >= text.size()) fail("missing )");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        args.push_back(expr());
      }
      if (args.size() < 2) fail("operator needs at least two operands");
      TermPtr acc = args[0];
      for (std::size_t i = 1; i < args.size(); ++i)
        acc = op == "+" ? t_add(acc, args[i]) : t_mul(acc, args[i]);
      return acc;
    }
    std::string_view a = atom();
    if (a.size() >= 2 && a[0] == 'x' && std::isdigit(static_cast<unsigned char>(a[1]))) {
      int idx = 0;
      for (std::size_t i = 1; i < a.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(a[i]))) fail("bad variable name");
        idx = idx * 10 + (a[i] - '0');
        if (idx > 1'000'000) fail("variable index too large");
      }
      return t_var(idx);
    }
    auto r = Rational::parse(a);
    if (!r) fail("expected variable or rational constant");
    return t_const(*r);
  }
};

/* Normal form used only as an equality key. */
struct Norm {
  enum class Kind { Const, Var, Sum, Prod };
  Kind kind = Kind::Const;
  Rational c;
  int var = 0;
  std::vector<Norm> kids;

  friend bool operator<(const Norm& a, const Norm& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    switch (a.kind) {
      case Kind::Const:
        return a.c < b.c;
      case Kind::Var:
        return a.var < b.var;
      default: {
        return std::lexicographical_compare(a.kids.begin(), a.kids.end(), b.kids.begin(),
                                            b.kids.end());
      }
    }
  }
};

Norm norm_const(Rational q) {
  Norm n;
  n.kind = Norm::Kind::Const;
  n.c = std::move(q);
  return n;
}

Norm normalize(const TermPtr& t) {
  switch (t->kind) {
    case TermExpr::Kind::Var: {
      Norm n;
      n.kind = Norm::Kind::Var;
      n.var = t->var;
      return n;
    }
    case TermExpr::Kind::Const:
      return norm_const(t->value);
    case TermExpr::Kind::Add:
    case TermExpr::Kind::Mul: {
      bool is_add = t->kind == TermExpr::Kind::Add;
      auto target = is_add ? Norm::Kind::Sum : Norm::Kind::Prod;
      std::vector<Norm> flat;
      auto absorb = [&](auto&& self, const Norm& n) -> void {
        if (n.kind == target) {
          for (const auto& k : n.kids) self(self, k);
        } else {
          flat.push_back(n);
        }
      };
      Norm l = normalize(t->lhs);
      Norm r = normalize(t->rhs);
      absorb(absorb, l);
      absorb(absorb, r);

      Rational acc = is_add ? Rational(0) : Rational(1);
      std::vector<Norm> kids;
      for (auto& n : flat) {
        if (n.kind == Norm::Kind::Const) {
          acc = is_add ? acc + n.c : acc * n.c;
        } else {
          kids.push_back(std::move(n));
        }
      }
      if (!is_add && acc.is_zero()) return norm_const(Rational(0));
      bool keep_const = is_add ? !acc.is_zero() : !(acc == Rational(1));
      if (kids.empty()) return norm_const(acc);
      if (keep_const) kids.push_back(norm_const(acc));
      if (kids.size() == 1) return kids[0];
      std::sort(kids.begin(), kids.end());
      Norm n;
      n.kind = target;
      n.kids = std::move(kids);
      return n;
    }
  }
  return norm_const(Rational(0));
}

void print_norm(const Norm& n, std::string& out) {
  switch (n.kind) {
    case Norm::Kind::Const:
      out += n.c.str();
      return;
    case Norm::Kind::Var:
      out += "x" + std::to_string(n.var);
      return;
    case Norm::Kind::Sum:
    case Norm::Kind::Prod:
      out += n.kind == Norm::Kind::Sum ? "(+ " : "(* ";
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += ' ';
        print_norm(n.kids[i], out);
      }
      out += ')';
      return;
  }
}

}  // namespace

TermPtr parse_term(std::string_view text) {
  Parser p{text};
  TermPtr t = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

std::string normal_key(const TermPtr& t) {
  std::string out;
  print_norm(normalize(t), out);
  return out;
}

std::optional<std::uint32_t> eval_idx(const TermPtr& t,
                                      std::span<const std::uint32_t> assignment,
                                      const GroundSet& g) {
  switch (t->kind) {
    case TermExpr::Kind::Var:
      return assignment[static_cast<std::size_t>(t->var)];
    case TermExpr::Kind::Const:
      return g.embed_constant(t->value);
    case TermExpr::Kind::Add: {
      auto a = eval_idx(t->lhs, assignment, g);
      if (!a) return std::nullopt;
      auto b = eval_idx(t->rhs, assignment, g);
      if (!b) return std::nullopt;
      return g.add_idx(*a, *b);
    }
    case TermExpr::Kind::Mul: {
      auto a = eval_idx(t->lhs, assignment, g);
      if (!a) return std::nullopt;
      auto b = eval_idx(t->rhs, assignment, g);
      if (!b) return std::nullopt;
      return g.mul_idx(*a, *b);
    }
  }
  return std::nullopt;
}

std::optional<Rational> eval_value(const TermPtr& t, std::span<const Rational> assignment,
                                   const GroundSet& g) {
  std::vector<std::uint32_t> idx(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto k = g.index_of(assignment[i]);
    if (!k) return std::nullopt;
    idx[i] = *k;
  }
  auto r = eval_idx(t, idx, g);
  if (!r) return std::nullopt;
  return g.value_at(*r);
}

}  // namespace quadpat
