#include "qdual/modelfile.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "qdual/errors.hpp"

namespace qdual {

// ---------------------------------------------------------------- Model helpers

int ContractionMap::exponent_of(const std::string& generator) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == generator) return generator_exponents[i];
  throw ConfigError("contraction " + name + " has no exponent for " + generator);
}

std::vector<std::string> Model::coordinate_names() const {
  return group ? group->generators().names() : std::vector<std::string>{};
}

const Representation& Model::representation(const std::string& n) const {
  for (const auto& r : representations)
    if (r.name == n) return r;
  throw ConfigError(name + ": no representation named " + n);
}

const ContractionMap& Model::contraction(const std::string& n) const {
  for (const auto& c : contractions)
    if (c.name == n) return c;
  throw ConfigError(name + ": no contraction map named " + n);
}

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { Ident, Number, Op, Tensor, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  int column = 0;
};

std::vector<Token> lex(const std::string& s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    int col = static_cast<int>(i) + 1;
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (s.compare(i, 3, "(x)") == 0) {
      out.push_back({Tok::Tensor, "(x)", col});
      i += 3;
      continue;
    }
    if (s.compare(i, 3, "\xE2\x8A\x97") == 0) {  // U+2297
      out.push_back({Tok::Tensor, "(x)", col});
      i += 3;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, s.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (std::string("+-*/^(),[]=").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Tok::Op, std::string(1, static_cast<char>(c)), col});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", line, col);
  }
  out.push_back({Tok::End, "", static_cast<int>(s.size()) + 1});
  return out;
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  Parser(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  Expr sum() {
    Expr left = tensor();
    while (peek_op("+") || peek_op("-")) {
      Token op = next();
      Expr right = tensor();
      left = node(op.text == "+" ? ExprNode::Kind::Add : ExprNode::Kind::Sub, op, {left, right});
    }
    return left;
  }

  std::vector<std::vector<Expr>> matrix() {
    std::vector<std::vector<Expr>> rows;
    expect("[");
    do {
      expect("[");
      std::vector<Expr> row;
      do row.push_back(sum());
      while (accept(","));
      expect("]");
      rows.push_back(std::move(row));
    } while (accept(","));
    expect("]");
    return rows;
  }

  void finish() {
    if (peek().type != Tok::End) fail("unexpected '" + peek().text + "'");
  }
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool peek_op(const char* s) const { return peek().type == Tok::Op && peek().text == s; }
  bool accept(const char* s) {
    if (!peek_op(s)) return false;
    ++pos_;
    return true;
  }
  void expect(const char* s) {
    if (!accept(s)) fail(std::string("expected '") + s + "'");
  }
  std::string ident() {
    if (peek().type != Tok::Ident) fail("expected a name");
    return next().text;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, peek().column); }

 private:
  Expr node(ExprNode::Kind k, const Token& at, std::vector<Expr> args) const {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->args = std::move(args);
    n->line = line_;
    n->column = at.column;
    return n;
  }

  Expr tensor() {
    Expr left = product();
    if (peek().type == Tok::Tensor) {
      Token op = next();
      Expr right = product();
      if (peek().type == Tok::Tensor) fail("at most one tensor symbol per term");
      return node(ExprNode::Kind::Tensor, op, {left, right});
    }
    return left;
  }

  Expr product() {
    Expr left = unary();
    while (peek_op("*") || peek_op("/")) {
      Token op = next();
      Expr right = unary();
      left = node(op.text == "*" ? ExprNode::Kind::Mul : ExprNode::Kind::Div, op, {left, right});
    }
    return left;
  }

  Expr unary() {
    if (peek_op("-")) {
      Token op = next();
      return node(ExprNode::Kind::Neg, op, {unary()});
    }
    if (peek_op("+")) {
      next();
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (peek_op("^")) {
      Token op = next();
      if (peek().type != Tok::Number) fail("exponent must be a nonnegative integer");
      Token num = next();
      auto e = std::make_shared<ExprNode>();
      e->kind = ExprNode::Kind::Number;
      e->value = Rational::parse(num.text);
      e->line = line_;
      e->column = num.column;
      return node(ExprNode::Kind::Pow, op, {base, e});
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    if (t.type == Tok::Number) {
      Token num = next();
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::Number;
      n->value = Rational::parse(num.text);
      n->line = line_;
      n->column = num.column;
      return n;
    }
    if (t.type == Tok::Ident) {
      Token id = next();
      if (accept("(")) {
        if (id.text != "exp" && id.text != "sinh" && id.text != "cosh") {
          throw ParseError("unknown function '" + id.text + "'", line_, id.column);
        }
        Expr arg = sum();
        expect(")");
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::Func;
        n->name = id.text;
        n->args = {arg};
        n->line = line_;
        n->column = id.column;
        return n;
      }
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::Ident;
      n->name = id.text;
      n->line = line_;
      n->column = id.column;
      return n;
    }
    if (accept("(")) {
      Expr e = sum();
      expect(")");
      return e;
    }
    fail(t.type == Tok::End ? "unexpected end of expression" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

// ---------------------------------------------------------------- evaluation

[[noreturn]] void eval_fail(const ExprNode& n, const std::string& msg) { throw ParseError(msg, n.line, n.column); }

struct Evaluator {
  const GeneratorSet& gens;
  const ParamSpace* space;
  int max_len;

  ExprValue scalar(const ScalarSeries& c) const { return {false, NCPoly::constant(c), {}}; }

  static bool is_scalar(const ExprValue& v) {
    if (v.is_tensor) return false;
    for (const auto& [w, c] : v.poly.terms())
      if (!w.empty()) return false;
    return true;
  }
  static ScalarSeries scalar_of(const ExprValue& v) {
    auto it = v.poly.terms().find(Word{});
    return it == v.poly.terms().end() ? ScalarSeries() : it->second;
  }

  ExprValue eval(const ExprNode& n) const {
    using K = ExprNode::Kind;
    switch (n.kind) {
      case K::Number: return scalar(ScalarSeries(space, n.value));
      case K::Ident: {
        int g = gens.index(n.name);
        if (g >= 0) return {false, NCPoly::letter(g), {}};
        if (space && space->index(n.name) >= 0) return scalar(ScalarSeries::param(space, n.name));
        eval_fail(n, "unknown identifier '" + n.name + "'");
      }
      case K::Neg: return negate(eval(*n.args[0]));
      case K::Add: return add(n, eval(*n.args[0]), eval(*n.args[1]));
      case K::Sub: return add(n, eval(*n.args[0]), negate(eval(*n.args[1])));
      case K::Mul: return mul(n, eval(*n.args[0]), eval(*n.args[1]));
      case K::Div: return div(n, eval(*n.args[0]), eval(*n.args[1]));
      case K::Pow: {
        ExprValue base = eval(*n.args[0]);
        if (base.is_tensor) eval_fail(n, "powers of tensors are not supported");
        Rational e = n.args[1]->value;
        if (!e.is_integer() || e.sign() < 0) eval_fail(n, "exponent must be a nonnegative integer");
        NCPoly r = NCPoly::constant(ScalarSeries(space, Rational(1)));
        for (Rational k(0); k < e; k += Rational(1)) r = r.times(base.poly, max_len);
        return {false, r, {}};
      }
      case K::Func: return func(n, eval(*n.args[0]));
      case K::Tensor: {
        ExprValue l = eval(*n.args[0]), r = eval(*n.args[1]);
        if (l.is_tensor || r.is_tensor) eval_fail(n, "nested tensor product");
        return {true, NCPoly(), {{l.poly, r.poly}}};
      }
    }
    eval_fail(n, "bad expression");
  }

  static ExprValue negate(ExprValue v) {
    if (v.is_tensor) {
      for (auto& [l, r] : v.tensor) l = -l;
    } else {
      v.poly = -v.poly;
    }
    return v;
  }

  ExprValue add(const ExprNode& n, ExprValue a, const ExprValue& b) const {
    if (a.is_tensor != b.is_tensor) {
      // A bare zero may be added to a tensor.
      if (!a.is_tensor && a.poly.is_zero()) return b;
      if (!b.is_tensor && b.poly.is_zero()) return a;
      eval_fail(n, "cannot add a tensor and a plain element");
    }
    if (a.is_tensor) {
      a.tensor.insert(a.tensor.end(), b.tensor.begin(), b.tensor.end());
    } else {
      a.poly += b.poly;
    }
    return a;
  }

  ExprValue mul(const ExprNode& n, const ExprValue& a, const ExprValue& b) const {
    if (a.is_tensor && b.is_tensor) eval_fail(n, "product of two tensors");
    if (a.is_tensor || b.is_tensor) {
      const ExprValue& t = a.is_tensor ? a : b;
      const ExprValue& s = a.is_tensor ? b : a;
      if (!is_scalar(s)) eval_fail(n, "tensors may only be scaled by numbers or parameters");
      ExprValue r = t;
      for (auto& [l, rr] : r.tensor) l = l.scaled(scalar_of(s));
      return r;
    }
    return {false, a.poly.times(b.poly, max_len), {}};
  }

  ExprValue div(const ExprNode& n, const ExprValue& a, const ExprValue& b) const {
    if (!is_scalar(b)) eval_fail(n, "division only by numbers or parameter monomials");
    ScalarSeries d = scalar_of(b);
    if (d.terms().size() != 1) eval_fail(n, "division only by numbers or parameter monomials");
    const auto& [key, coef] = d.terms().front();
    if (key.eps != 0) eval_fail(n, "division by the contraction parameter");
    Rational inv = Rational(1) / coef;
    auto divide = [&](const ScalarSeries& x) {
      ScalarSeries r = x * inv;
      for (int i = 0; space && i < space->size(); ++i)
        for (int k = 0; k < key.exponent(i); ++k) {
          try {
            r = r.divide_by_param(space->names()[i]);
          } catch (const ConfigError&) {
            eval_fail(n, "numerator is not divisible by " + space->names()[i]);
          }
        }
      return r;
    };
    ExprValue out = a;
    if (a.is_tensor) {
      for (auto& [l, r] : out.tensor) {
        NCPoly q;
        for (const auto& [w, c] : l.terms()) q.add(w, divide(c));
        l = q;
      }
    } else {
      NCPoly q;
      for (const auto& [w, c] : a.poly.terms()) q.add(w, divide(c));
      out.poly = q;
    }
    return out;
  }

  ExprValue func(const ExprNode& n, const ExprValue& arg) const {
    if (arg.is_tensor) eval_fail(n, n.name + " of a tensor");
    ScalarSeries c0 = scalar_of(arg);
    if (!c0.degree_part(0).is_zero() || c0.min_epsilon().value_or(0) < 0)
      eval_fail(n, n.name + " argument must vanish at zero deformation and degree");
    NCPoly sum = NCPoly::constant(ScalarSeries(space, Rational(1)));
    NCPoly power = sum;
    const int limit = max_len + (space ? space->order() : 0) + 1;
    NCPoly even, odd;
    even = sum;
    for (int k = 1; k <= limit; ++k) {
      power = power.times(arg.poly, max_len).scaled(ScalarSeries(Rational(1, k)));
      if (power.is_zero()) break;
      (k % 2 ? odd : even) += power;
    }
    if (n.name == "exp") return {false, even + odd, {}};
    if (n.name == "sinh") return {false, odd, {}};
    return {false, even, {}};
  }
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

enum class Section { Header, Relations, Coproducts, Counit, DualRelations, DualCoproducts, DualCounit, Rep, Contraction };

}  // namespace

Expr parse_expression(const std::string& text, int line) {
  Parser p(lex(text, line), line);
  Expr e = p.sum();
  p.finish();
  return e;
}

ExprValue evaluate(const Expr& e, const GeneratorSet& gens, const ParamSpace* space) {
  Evaluator ev{gens, space, gens.working_cutoff()};
  return ev.eval(*e);
}

ModelText parse_model_text(const std::string& text) {
  ModelText m;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  Section sec = Section::Header;
  RepresentationText* rep = nullptr;
  ContractionMap* con = nullptr;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    std::string t = trim(line);
    if (t.empty()) continue;
    // Column offset of the trimmed text inside the raw line.
    const int offset = static_cast<int>(line.find_first_not_of(" \t"));
    if (t.front() == '[' && t.back() == ']' && t.find('=') == std::string::npos && t.find(',') == std::string::npos) {
      auto words = split_words(t.substr(1, t.size() - 2));
      if (words.empty()) throw ParseError("empty section header", line_no, 1);
      rep = nullptr;
      con = nullptr;
      std::string head = words[0];
      if (head == "dual" && words.size() >= 2) {
        m.has_group = true;
        if (words[1] == "relations" && words.size() == 2) sec = Section::DualRelations;
        else if (words[1] == "coproducts" && words.size() == 2) sec = Section::DualCoproducts;
        else if (words[1] == "counit" && words.size() == 2) sec = Section::DualCounit;
        else if (words[1] == "representation" && words.size() == 3) {
          sec = Section::Rep;
          m.representations.push_back({words[2], true, {}});
          rep = &m.representations.back();
        } else {
          throw ParseError("unknown section '" + t + "'", line_no, offset + 1);
        }
      } else if (head == "relations" && words.size() == 1) {
        sec = Section::Relations;
      } else if (head == "coproducts" && words.size() == 1) {
        sec = Section::Coproducts;
      } else if (head == "counit" && words.size() == 1) {
        sec = Section::Counit;
      } else if (head == "representation" && words.size() == 2) {
        sec = Section::Rep;
        m.representations.push_back({words[1], false, {}});
        rep = &m.representations.back();
      } else if (head == "contraction" && words.size() == 2) {
        sec = Section::Contraction;
        ContractionMap c;
        c.name = words[1];
        m.contractions.push_back(c);
        con = &m.contractions.back();
      } else {
        throw ParseError("unknown section '" + t + "'", line_no, offset + 1);
      }
      continue;
    }
    if (sec == Section::Header) {
      auto words = split_words(t);
      const std::string& key = words[0];
      std::vector<std::string> rest(words.begin() + 1, words.end());
      if (key == "model") {
        if (rest.size() != 1) throw ParseError("model takes one name", line_no, offset + 1);
        m.name = rest[0];
      } else if (key == "kind") {
        if (rest.size() != 1 || (rest[0] != "algebra" && rest[0] != "group"))
          throw ParseError("kind must be 'algebra' or 'group'", line_no, offset + 1);
        m.kind = rest[0] == "algebra" ? PresentationKind::Algebra : PresentationKind::Group;
      } else if (key == "params") {
        m.params = rest;
      } else if (key == "generators") {
        m.generators = rest;
      } else if (key == "coordinates") {
        m.coordinates = rest;
      } else if (key == "note") {
        m.notes.push_back(trim(t.substr(4)));
      } else {
        throw ParseError("unknown header key '" + key + "'", line_no, offset + 1);
      }
      continue;
    }
    // Body lines: split at the first '=' and parse the right side.
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected '='", line_no, offset + 1);
    std::string lhs = trim(line.substr(0, eq));
    // Blank out the left side so token columns match the source line.
    std::string rhs_text = std::string(eq + 1, ' ') + line.substr(eq + 1);
    {
      switch (sec) {
        case Section::Relations:
        case Section::DualRelations: {
          if (lhs.size() < 5 || lhs.front() != '[' || lhs.back() != ']')
            throw ParseError("expected [A, B] on the left", line_no, offset + 1);
          std::string inner = lhs.substr(1, lhs.size() - 2);
          std::size_t comma = inner.find(',');
          if (comma == std::string::npos) throw ParseError("expected [A, B] on the left", line_no, offset + 1);
          RelationText r{trim(inner.substr(0, comma)), trim(inner.substr(comma + 1)), nullptr, line_no};
          r.value = parse_expression(rhs_text, line_no);
          (sec == Section::Relations ? m.algebra : m.group).relations.push_back(r);
          break;
        }
        case Section::Coproducts:
        case Section::DualCoproducts:
        case Section::Counit:
        case Section::DualCounit: {
          AssignmentText a{lhs, parse_expression(rhs_text, line_no), line_no};
          SideText& side = (sec == Section::Coproducts || sec == Section::Counit) ? m.algebra : m.group;
          (sec == Section::Coproducts || sec == Section::DualCoproducts ? side.coproducts : side.counit).push_back(a);
          break;
        }
        case Section::Rep: {
          Parser p(lex(rhs_text, line_no), line_no);
          MatrixText mt{lhs, p.matrix(), line_no};
          p.finish();
          rep->matrices.push_back(mt);
          break;
        }
        case Section::Contraction: {
          Parser p(lex(rhs_text, line_no), line_no);
          bool neg = p.accept("-");
          if (p.peek().type != Tok::Number) p.fail("expected an integer exponent");
          int v = std::stoi(p.next().text);
          p.finish();
          con->generators.push_back(lhs);
          con->generator_exponents.push_back(neg ? -v : v);
          break;
        }
        case Section::Header: break;
      }
    }
  }
  if (m.name.empty()) throw ParseError("missing 'model' line", 1, 1);
  if (m.generators.empty()) throw ParseError("missing 'generators' line", 1, 1);
  return m;
}

namespace {

std::map<std::pair<int, int>, NCPoly> build_relations(const std::vector<RelationText>& rels, const GeneratorSet& g,
                                                      const ParamSpace* eval_space, const ParamSpace* space) {
  std::map<std::pair<int, int>, NCPoly> out;
  for (const auto& r : rels) {
    int a = g.index(r.left), b = g.index(r.right);
    if (a < 0 || b < 0) throw ParseError("unknown generator in [" + r.left + ", " + r.right + "]", r.line, 1);
    if (a == b) throw ParseError("commutator of a generator with itself", r.line, 1);
    ExprValue v = evaluate(r.value, g, eval_space);
    if (v.is_tensor) throw ParseError("relation right side is a tensor", r.line, 1);
    NCPoly p;
    for (const auto& [w, c] : v.poly.terms()) p.add(w, c.rebased(space));
    if (a < b) {
      std::swap(a, b);
      p = -p;
    }
    if (!out.emplace(std::make_pair(a, b), p).second)
      throw ParseError("duplicate relation for [" + r.left + ", " + r.right + "]", r.line, 1);
  }
  return out;
}

std::shared_ptr<const HopfPresentation> build_side(const std::string& name, PresentationKind kind,
                                                   const std::vector<std::string>& names, const SideText& side,
                                                   const std::vector<std::string>& params, const Truncation& t) {
  const ParamSpace* space = ParamSpace::make(params, t.order);
  const ParamSpace* eval_space = ParamSpace::make(params, t.order + 4);
  auto gens = std::make_shared<GeneratorSet>(names, t.degree, t.working());
  auto rels = build_relations(side.relations, *gens, eval_space, space);
  std::vector<std::vector<SimpleTensor>> cops(names.size());
  std::vector<bool> seen(names.size(), false);
  auto rebase = [&](const NCPoly& p) {
    NCPoly q;
    for (const auto& [w, c] : p.terms()) q.add(w, c.rebased(space));
    return q;
  };
  for (const auto& a : side.coproducts) {
    int g = gens->index(a.target);
    if (g < 0) throw ParseError("coproduct of unknown generator '" + a.target + "'", a.line, 1);
    if (seen[g]) throw ParseError("duplicate coproduct for '" + a.target + "'", a.line, 1);
    seen[g] = true;
    ExprValue v = evaluate(a.value, *gens, eval_space);
    if (!v.is_tensor) throw ParseError("coproduct of '" + a.target + "' is not a tensor", a.line, 1);
    for (auto& [l, r] : v.tensor) cops[g].emplace_back(rebase(l), rebase(r));
  }
  for (std::size_t g = 0; g < names.size(); ++g)
    if (!seen[g]) throw ConfigError(name + ": missing coproduct for " + names[g]);
  std::vector<ScalarSeries> counit(names.size());
  for (const auto& a : side.counit) {
    int g = gens->index(a.target);
    if (g < 0) throw ParseError("counit of unknown generator '" + a.target + "'", a.line, 1);
    ExprValue v = evaluate(a.value, *gens, eval_space);
    if (!Evaluator::is_scalar(v)) throw ParseError("counit value must be a scalar", a.line, 1);
    counit[g] = Evaluator::scalar_of(v).rebased(space);
  }
  return std::make_shared<HopfPresentation>(
      HopfPresentation::build(name, kind, gens, space, rels, cops, counit));
}

}  // namespace

Model instantiate(const ModelText& text, const Truncation& t) {
  if (t.order < 0 || t.degree < 1 || t.cushion < 0) throw ConfigError("invalid truncation");
  if (t.order > ParamSpace::kMaxOrder) throw ConfigError("order too large");
  Model m;
  m.name = text.name;
  m.truncation = t;
  m.params = text.params;
  m.notes = text.notes;
  m.algebra = build_side(text.name, text.kind, text.generators, text.algebra, text.params, t);
  if (text.has_group) {
    if (text.coordinates.size() != text.generators.size())
      throw ConfigError(text.name + ": one coordinate per generator required");
    m.group = build_side(text.name + "*", PresentationKind::Group, text.coordinates, text.group, text.params, t);
  }
  const ParamSpace* space = m.algebra->space();
  for (const auto& rt : text.representations) {
    Representation r;
    r.name = rt.name;
    r.on_group = rt.on_group;
    const HopfPresentation* side = rt.on_group ? m.group.get() : m.algebra.get();
    if (!side) throw ConfigError(text.name + ": representation " + rt.name + " needs the dual side");
    const GeneratorSet& g = side->generators();
    r.matrices.assign(g.size(), {});
    for (const auto& mt : rt.matrices) {
      int gi = g.index(mt.target);
      if (gi < 0) throw ParseError("representation of unknown generator '" + mt.target + "'", mt.line, 1);
      const int dim = static_cast<int>(mt.rows.size());
      if (r.dim == 0) r.dim = dim;
      if (dim != r.dim) throw ParseError("matrix size differs within representation " + rt.name, mt.line, 1);
      std::vector<std::vector<ScalarSeries>> mat;
      for (const auto& row : mt.rows) {
        if (static_cast<int>(row.size()) != dim) throw ParseError("matrix is not square", mt.line, 1);
        std::vector<ScalarSeries> out;
        for (const auto& e : row) {
          ExprValue v = evaluate(e, g, space);
          if (!Evaluator::is_scalar(v)) throw ParseError("matrix entries must be scalars", mt.line, 1);
          out.push_back(Evaluator::scalar_of(v));
        }
        mat.push_back(out);
      }
      r.matrices[gi] = mat;
    }
    for (auto& mat : r.matrices)
      if (mat.empty()) mat.assign(r.dim, std::vector<ScalarSeries>(r.dim));
    m.representations.push_back(r);
  }
  for (const auto& ct : text.contractions) {
    ContractionMap c;
    c.name = ct.name;
    c.generators = text.generators;
    c.generator_exponents.assign(text.generators.size(), 0);
    std::vector<bool> seen(text.generators.size(), false);
    for (std::size_t i = 0; i < ct.generators.size(); ++i) {
      const std::string& key = ct.generators[i];
      int g = -1;
      for (std::size_t j = 0; j < text.generators.size(); ++j)
        if (text.generators[j] == key) g = static_cast<int>(j);
      if (g >= 0) {
        c.generator_exponents[g] = ct.generator_exponents[i];
        seen[g] = true;
      } else if (std::find(text.params.begin(), text.params.end(), key) != text.params.end()) {
        c.param_exponents[key] = ct.generator_exponents[i];
      } else {
        throw ConfigError(text.name + ": contraction " + ct.name + " names unknown symbol " + key);
      }
    }
    for (std::size_t j = 0; j < seen.size(); ++j)
      if (!seen[j]) throw ConfigError(text.name + ": contraction " + ct.name + " lacks exponent for " + text.generators[j]);
    m.contractions.push_back(c);
  }
  return m;
}

Model load_model_file(const std::string& path, const Truncation& t) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return instantiate(parse_model_text(ss.str()), t);
}

// ---------------------------------------------------------------- writer

std::string series_expression(const ScalarSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : s.terms()) {
    if (k.eps != 0) throw ConfigError("cannot write a coefficient that still depends on the contraction parameter");
    std::string mono;
    for (int i = 0; s.space() && i < s.space()->size(); ++i) {
      int e = k.exponent(i);
      if (e == 0) continue;
      mono += "*" + s.space()->names()[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    Rational a = c;
    bool neg = a.sign() < 0;
    if (neg) a = -a;
    std::string num = a.str();
    std::string term;
    if (mono.empty()) {
      term = num;
    } else if (a.is_one()) {
      term = mono.substr(1);
    } else {
      term = num + mono;
    }
    if (out.empty()) {
      out = (neg ? "-" : "") + term;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out;
}

namespace {

std::string mono_expression(const GeneratorSet& g, Mono m) {
  std::string s;
  for (int i = 0; i < g.size(); ++i) {
    int e = m.get(i);
    if (!e) continue;
    if (!s.empty()) s += "*";
    s += g.names()[i];
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string coefficient_prefix(const ScalarSeries& c) {
  std::string e = series_expression(c);
  if (e == "1") return "";
  if (e == "-1") return "-";
  return "(" + e + ")*";
}

std::string pbw_expression(const GeneratorSet& g, const PBWForm& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : p.terms()) {
    if (!s.empty()) s += " + ";
    std::string pre = coefficient_prefix(c);
    std::string mono = mono_expression(g, m);
    if (mono == "1") {
      s += "(" + series_expression(c) + ")";
    } else {
      s += pre + mono;
    }
  }
  return s;
}

std::string tensor_expression(const GeneratorSet& g, const TensorElement& t) {
  if (t.is_zero()) return "0";
  std::string s;
  for (const auto& [k, c] : t.terms()) {
    if (!s.empty()) s += " + ";
    s += coefficient_prefix(c) + mono_expression(g, k[0]) + " (x) " + mono_expression(g, k[1]);
  }
  return s;
}

void write_side(std::ostringstream& o, const HopfPresentation& h, const std::string& prefix) {
  const GeneratorSet& g = h.generators();
  o << "\n[" << prefix << "relations]\n";
  for (int j = 0; j < h.size(); ++j)
    for (int i = 0; i < j; ++i) {
      const PBWForm& c = h.engine().correction(j, i);
      if (c.is_zero()) continue;
      o << "[" << g.names()[j] << ", " << g.names()[i] << "] = " << pbw_expression(g, c) << "\n";
    }
  o << "\n[" << prefix << "coproducts]\n";
  for (int i = 0; i < h.size(); ++i)
    o << g.names()[i] << " = " << tensor_expression(g, h.generator_coproduct(i)) << "\n";
  bool any = false;
  for (const auto& c : h.counit_values()) any = any || !c.is_zero();
  if (any) {
    o << "\n[" << prefix << "counit]\n";
    for (int i = 0; i < h.size(); ++i)
      if (!h.counit_values()[i].is_zero()) o << g.names()[i] << " = " << series_expression(h.counit_values()[i]) << "\n";
  }
}

}  // namespace

std::string write_model(const Model& m) {
  std::ostringstream o;
  o << "model " << m.name << "\n";
  o << "kind " << (m.algebra->kind() == PresentationKind::Algebra ? "algebra" : "group") << "\n";
  if (!m.params.empty()) {
    o << "params";
    for (const auto& p : m.params) o << " " << p;
    o << "\n";
  }
  o << "generators";
  for (const auto& g : m.generator_names()) o << " " << g;
  o << "\n";
  if (m.group) {
    o << "coordinates";
    for (const auto& c : m.coordinate_names()) o << " " << c;
    o << "\n";
  }
  for (const auto& n : m.notes) o << "note " << n << "\n";
  write_side(o, *m.algebra, "");
  if (m.group) write_side(o, *m.group, "dual ");
  for (const auto& r : m.representations) {
    o << "\n[" << (r.on_group ? "dual " : "") << "representation " << r.name << "]\n";
    const HopfPresentation& side = r.on_group ? *m.group : *m.algebra;
    for (int gi = 0; gi < side.size(); ++gi) {
      o << side.generators().names()[gi] << " = [";
      for (int i = 0; i < r.dim; ++i) {
        o << (i ? ", [" : "[");
        for (int j = 0; j < r.dim; ++j) o << (j ? ", " : "") << series_expression(r.matrices[gi][i][j]);
        o << "]";
      }
      o << "]\n";
    }
  }
  for (const auto& c : m.contractions) {
    o << "\n[contraction " << c.name << "]\n";
    for (std::size_t i = 0; i < c.generators.size(); ++i) o << c.generators[i] << " = " << c.generator_exponents[i] << "\n";
    for (const auto& [p, n] : c.param_exponents) o << p << " = " << n << "\n";
  }
  return o.str();
}

}  // namespace qdual
