#include "ringlab/builder.hpp"

#include <algorithm>
#include <sstream>

#include "ringlab/errors.hpp"
#include "ringlab/lattice.hpp"

namespace ringlab {

namespace {

struct Token {
  enum class Kind { Number, Ident, Symbol, End };
  Kind kind;
  std::string text;
  i64 value = 0;
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void error(const std::string& msg) const {
    std::ostringstream os;
    os << msg << " at position " << tok_.pos << " in ring spec";
    fail(ErrorKind::ParseError, os.str());
  }

  void expect_symbol(char c) {
    if (tok_.kind != Token::Kind::Symbol || tok_.text[0] != c)
      error(std::string("expected '") + c + "'");
    advance();
  }

  i64 expect_number() {
    if (tok_.kind != Token::Kind::Number) error("expected a number");
    i64 v = tok_.value;
    advance();
    return v;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_.pos = pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Token::Kind::End, "", 0, pos_};
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      i64 v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_] - '0');
        if (v > (i64{1} << 40)) fail(ErrorKind::ParseError, "number too large in ring spec");
        ++pos_;
      }
      tok_ = {Token::Kind::Number, text_.substr(start, pos_ - start), v, start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_ = {Token::Kind::Ident, text_.substr(start, pos_ - start), 0, start};
      return;
    }
    if (std::string("/(),[]^+*").find(c) != std::string::npos) {
      tok_ = {Token::Kind::Symbol, std::string(1, c), 0, pos_};
      ++pos_;
      return;
    }
    std::ostringstream os;
    os << "unexpected character '" << c << "' at position " << pos_ << " in ring spec";
    fail(ErrorKind::ParseError, os.str());
  }

  const std::string& text_;
  size_t pos_ = 0;
  Token tok_;
};

bool is_symbol(const Token& t, char c) {
  return t.kind == Token::Kind::Symbol && t.text[0] == c;
}

bool is_ident(const Token& t, const char* name) {
  return t.kind == Token::Kind::Ident && t.text == name;
}

SpecPtr parse_spec(Lexer& lex);

std::vector<i64> parse_poly(Lexer& lex) {
  std::vector<i64> coeffs;
  auto bump = [&coeffs](int degree, i64 value) {
    if (static_cast<int>(coeffs.size()) <= degree) coeffs.resize(degree + 1, 0);
    coeffs[degree] += value;
  };
  while (true) {
    i64 coef = 1;
    bool saw_coef = false;
    if (lex.peek().kind == Token::Kind::Number) {
      coef = lex.next().value;
      saw_coef = true;
      if (is_symbol(lex.peek(), '*')) lex.next();
    }
    if (is_ident(lex.peek(), "x")) {
      lex.next();
      i64 degree = 1;
      if (is_symbol(lex.peek(), '^')) {
        lex.next();
        degree = lex.expect_number();
        if (degree < 0 || degree > 16) lex.error("unsupported polynomial degree");
      }
      bump(static_cast<int>(degree), coef);
    } else if (saw_coef) {
      bump(0, coef);
    } else {
      lex.error("expected a polynomial term");
    }
    if (is_symbol(lex.peek(), '+')) {
      lex.next();
      continue;
    }
    break;
  }
  return coeffs;
}

SpecPtr parse_base(Lexer& lex) {
  const Token& t = lex.peek();
  if (t.kind != Token::Kind::Ident) lex.error("expected a ring constructor");
  auto node = std::make_shared<RingSpecNode>();
  if (t.text == "Z") {
    lex.next();
    lex.expect_symbol('/');
    node->kind = RingSpecNode::Kind::Zmod;
    node->n = lex.expect_number();
    if (node->n < 1) lex.error("Z/<n> needs n >= 1");
  } else if (t.text == "GF") {
    lex.next();
    lex.expect_symbol('(');
    node->kind = RingSpecNode::Kind::GaloisField;
    node->n = lex.expect_number();
    lex.expect_symbol(')');
  } else if (t.text == "Mat" || t.text == "Tri") {
    bool mat = t.text == "Mat";
    lex.next();
    lex.expect_symbol('(');
    node->kind = mat ? RingSpecNode::Kind::Matrix : RingSpecNode::Kind::Triangular;
    node->n = lex.expect_number();
    if (node->n < 1 || node->n > 6) lex.error("matrix size out of range");
    lex.expect_symbol(',');
    node->left = parse_spec(lex);
    lex.expect_symbol(')');
  } else if (t.text == "op") {
    lex.next();
    lex.expect_symbol('(');
    node->kind = RingSpecNode::Kind::Opposite;
    node->left = parse_spec(lex);
    lex.expect_symbol(')');
  } else {
    lex.error("unknown ring constructor '" + t.text + "'");
  }
  return node;
}

SpecPtr parse_atom(Lexer& lex) {
  SpecPtr base = parse_base(lex);
  while (is_symbol(lex.peek(), '[')) {
    lex.next();
    if (!is_ident(lex.peek(), "x")) lex.error("expected 'x' in polynomial extension");
    lex.next();
    lex.expect_symbol(']');
    lex.expect_symbol('/');
    lex.expect_symbol('(');
    auto node = std::make_shared<RingSpecNode>();
    node->kind = RingSpecNode::Kind::PolyQuotient;
    node->left = base;
    node->poly = parse_poly(lex);
    lex.expect_symbol(')');
    base = node;
  }
  return base;
}

SpecPtr parse_spec(Lexer& lex) {
  SpecPtr left = parse_atom(lex);
  while (is_ident(lex.peek(), "x")) {
    lex.next();
    SpecPtr right = parse_atom(lex);
    auto node = std::make_shared<RingSpecNode>();
    node->kind = RingSpecNode::Kind::Product;
    node->left = left;
    node->right = right;
    left = node;
  }
  return left;
}

std::string poly_str(const std::vector<i64>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d) {
    if (coeffs[d] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (d == 0) {
      os << coeffs[d];
    } else {
      if (coeffs[d] != 1) os << coeffs[d] << "*";
      os << "x";
      if (d > 1) os << "^" << d;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

std::string RingSpecNode::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Zmod:
      os << "Z/" << n;
      break;
    case Kind::GaloisField:
      os << "GF(" << n << ")";
      break;
    case Kind::Matrix:
      os << "Mat(" << n << ", " << left->str() << ")";
      break;
    case Kind::Triangular:
      os << "Tri(" << n << ", " << left->str() << ")";
      break;
    case Kind::Opposite:
      os << "op(" << left->str() << ")";
      break;
    case Kind::Product:
      os << left->str() << " x " << right->str();
      break;
    case Kind::PolyQuotient:
      os << left->str() << "[x]/(" << poly_str(poly) << ")";
      break;
  }
  return os.str();
}

SpecPtr parse_ring_spec(const std::string& text) {
  Lexer lex(text);
  SpecPtr spec = parse_spec(lex);
  if (lex.peek().kind != Token::Kind::End) lex.error("trailing input");
  return spec;
}

namespace {

// Polynomial helpers over Z/p for the Galois field search.
std::vector<i64> poly_mod(std::vector<i64> a, const std::vector<i64>& b, i64 p) {
  // b monic
  while (a.size() >= b.size()) {
    i64 lead = imod(a.back(), p);
    if (lead != 0) {
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = imod(a[shift + i] - lead * b[i], p);
    }
    a.pop_back();
  }
  while (!a.empty() && imod(a.back(), p) == 0) a.pop_back();
  return a;
}

bool is_irreducible(const std::vector<i64>& f, i64 p) {
  const int deg = static_cast<int>(f.size()) - 1;
  // trial division by every monic polynomial of degree 1..deg/2
  for (int d = 1; 2 * d <= deg; ++d) {
    i64 count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (i64 code = 0; code < count; ++code) {
      std::vector<i64> g(d + 1, 0);
      i64 c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

RingPtr build_poly_quotient(const RingPtr& base, const std::vector<i64>& poly,
                            const std::string& name) {
  if (!base->commutative)
    fail(ErrorKind::ParseError, "polynomial quotients need a commutative base ring");
  std::vector<i64> coeffs = poly;
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.size() < 2)
    fail(ErrorKind::ParseError, "polynomial modulus must have degree at least 1");
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (coeffs[d] != 1) fail(ErrorKind::ParseError, "polynomial modulus must be monic");

  const int kb = base->k();
  const int k = kb * d;
  std::vector<Elem> fc(d);  // lower coefficients of the modulus as ring elements
  for (int l = 0; l < d; ++l) fc[l] = base->scalar(coeffs[l]);

  // polynomials over the base are degree-indexed vectors of ring elements
  auto reduce_poly = [&](std::vector<Elem> v) {
    for (int deg = static_cast<int>(v.size()) - 1; deg >= d; --deg) {
      Elem lead = v[deg];
      if (base->is_zero(lead)) continue;
      v[deg] = base->zero();
      for (int l = 0; l < d; ++l)
        v[deg - d + l] = base->sub(v[deg - d + l], base->mul(lead, fc[l]));
    }
    v.resize(d, base->zero());
    return v;
  };

  Vec orders(k);
  Vec unit(k, 0);
  for (int j = 0; j < d; ++j)
    for (int c = 0; c < kb; ++c) orders[j * kb + c] = base->orders[c];
  for (int c = 0; c < kb; ++c) unit[c] = base->unit[c];

  std::vector<std::vector<Vec>> mult(k, std::vector<Vec>(k, Vec(k, 0)));
  for (int s = 0; s < d; ++s)
    for (int a = 0; a < kb; ++a)
      for (int t = 0; t < d; ++t)
        for (int b = 0; b < kb; ++b) {
          std::vector<Elem> prod(s + t + 1, base->zero());
          prod[s + t] = base->mult[a][b];
          std::vector<Elem> red = reduce_poly(std::move(prod));
          Vec& cell = mult[s * kb + a][t * kb + b];
          for (int j = 0; j < d; ++j)
            for (int c = 0; c < kb; ++c) cell[j * kb + c] = red[j][c];
        }
  return make_ring(name, std::move(orders), std::move(mult), std::move(unit));
}

RingPtr build_matrix_ring(const RingPtr& base, int n, bool upper_triangular,
                          const std::string& name) {
  const int kb = base->k();
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!upper_triangular || i <= j) cells.emplace_back(i, j);
  const int k = static_cast<int>(cells.size()) * kb;
  auto index = [&](int cell, int c) { return cell * kb + c; };

  Vec orders(k), unit(k, 0);
  for (size_t cell = 0; cell < cells.size(); ++cell)
    for (int c = 0; c < kb; ++c) orders[index(static_cast<int>(cell), c)] = base->orders[c];
  for (size_t cell = 0; cell < cells.size(); ++cell)
    if (cells[cell].first == cells[cell].second)
      for (int c = 0; c < kb; ++c) unit[index(static_cast<int>(cell), c)] = base->unit[c];

  std::vector<std::vector<Vec>> mult(k, std::vector<Vec>(k, Vec(k, 0)));
  for (size_t ca = 0; ca < cells.size(); ++ca)
    for (int a = 0; a < kb; ++a)
      for (size_t cb = 0; cb < cells.size(); ++cb)
        for (int b = 0; b < kb; ++b) {
          if (cells[ca].second != cells[cb].first) continue;
          auto target = std::make_pair(cells[ca].first, cells[cb].second);
          auto it = std::find(cells.begin(), cells.end(), target);
          check(it != cells.end(), "matrix cell bookkeeping failed");
          int ct = static_cast<int>(it - cells.begin());
          const Elem& prod = base->mult[a][b];
          Vec& cell = mult[index(static_cast<int>(ca), a)][index(static_cast<int>(cb), b)];
          for (int c = 0; c < kb; ++c) cell[index(ct, c)] = prod[c];
        }
  return make_ring(name, std::move(orders), std::move(mult), std::move(unit));
}

RingPtr build_zmod(i64 n, const std::string& name) {
  if (n == 1) return make_ring(name, {1}, {{{0}}}, {0});
  return make_ring(name, {n}, {{{1}}}, {1});
}

}  // namespace

std::vector<i64> find_irreducible(i64 p, int degree) {
  i64 count = 1;
  for (int i = 0; i < degree; ++i) count *= p;
  for (i64 code = 0; code < count; ++code) {
    std::vector<i64> f(degree + 1, 0);
    i64 c = code;
    for (int i = 0; i < degree; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[degree] = 1;
    if (is_irreducible(f, p)) return f;
  }
  fail(ErrorKind::NotIrreducible, "no irreducible polynomial found");
}

RingPtr build_ring(const SpecPtr& spec) {
  const std::string name = spec->str();
  switch (spec->kind) {
    case RingSpecNode::Kind::Zmod:
      return build_zmod(spec->n, name);
    case RingSpecNode::Kind::GaloisField: {
      i64 q = spec->n;
      i64 p = 0;
      int e = 0;
      for (i64 cand = 2; cand * cand <= q; ++cand) {
        if (q % cand == 0) {
          p = cand;
          i64 m = q;
          while (m % cand == 0) {
            m /= cand;
            ++e;
          }
          if (m != 1) p = 0;
          break;
        }
      }
      if (p == 0 && is_prime(q)) {
        p = q;
        e = 1;
      }
      if (p == 0 || !is_prime(p))
        fail(ErrorKind::NotIrreducible, "GF(" + std::to_string(q) + ") needs a prime power");
      if (e == 1) return build_zmod(p, name);
      return build_poly_quotient(build_zmod(p, "Z/" + std::to_string(p)),
                                 find_irreducible(p, e), name);
    }
    case RingSpecNode::Kind::Matrix:
      return build_matrix_ring(build_ring(spec->left), static_cast<int>(spec->n), false, name);
    case RingSpecNode::Kind::Triangular:
      return build_matrix_ring(build_ring(spec->left), static_cast<int>(spec->n), true, name);
    case RingSpecNode::Kind::Opposite: {
      RingPtr inner = build_ring(spec->left);
      const size_t k = inner->orders.size();
      std::vector<std::vector<Vec>> mult(k, std::vector<Vec>(k));
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) mult[i][j] = inner->mult[j][i];
      return make_ring(name, inner->orders, std::move(mult), inner->unit);
    }
    case RingSpecNode::Kind::Product: {
      RingPtr a = build_ring(spec->left);
      RingPtr b = build_ring(spec->right);
      RingPtr prod = product_ring(a, b);
      check(prod->name == name, "product ring naming drifted from the spec text");
      return prod;
    }
    case RingSpecNode::Kind::PolyQuotient:
      return build_poly_quotient(build_ring(spec->left), spec->poly, name);
  }
  fail(ErrorKind::ParseError, "unhandled ring spec node");
}

RingPtr build_ring(const std::string& spec) { return build_ring(parse_ring_spec(spec)); }

RingPtr quotient_ring(const RingPtr& r, const std::vector<Elem>& gens,
                      bool close_under_products, const std::string& name) {
  std::vector<Vec> group_gens;
  for (const Elem& g : gens) {
    Elem gg = r->reduce(g);
    if (close_under_products) {
      for (int i = 0; i < r->k(); ++i)
        for (int j = 0; j < r->k(); ++j) {
          Elem bi(r->k(), 0), bj(r->k(), 0);
          bi[i] = 1;
          bj[j] = 1;
          group_gens.push_back(r->mul(r->mul(bi, gg), bj));
        }
    } else {
      group_gens.push_back(gg);
    }
  }
  Sublattice ideal = Sublattice::span(r->orders, group_gens);
  if (!close_under_products) {
    for (const Vec& g : ideal.generators())
      for (int i = 0; i < r->k(); ++i) {
        Elem bi(r->k(), 0);
        bi[i] = 1;
        if (!ideal.contains(r->mul(bi, g)) || !ideal.contains(r->mul(g, bi)))
          fail(ErrorKind::NotTwoSidedIdeal,
               "generators do not span a two-sided ideal in " + r->name);
      }
  }
  GroupPresentation pres(Sublattice::full(r->orders), ideal);
  if (pres.orders().empty()) return zero_ring();
  const auto& reps = pres.generator_reps();
  const int k = static_cast<int>(reps.size());
  std::vector<std::vector<Vec>> mult(k, std::vector<Vec>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) mult[a][b] = pres.coords(r->mul(reps[a], reps[b]));
  return make_ring(name, pres.orders(), std::move(mult), pres.coords(r->unit));
}

}  // namespace ringlab
