#include <cctype>
#include <sstream>

#include "ptree/pquotient.hpp"

namespace ptree {

namespace {

bool is_gen_inverse(const Word& a, const Word& b) {
  auto inv_of = [](const Word& x, const Word& y) {
    return x.kind == Word::gen && y.kind == Word::pow && y.e == -1 && y.args[0].kind == Word::gen &&
           y.args[0].g == x.g;
  };
  return inv_of(a, b) || inv_of(b, a);
}

}  // namespace

Word operator*(const Word& a, const Word& b) {
  Word w;
  w.kind = Word::mul;
  for (const Word* x : {&a, &b}) {
    if (x->kind == Word::one) continue;
    const auto parts = x->kind == Word::mul ? x->args : std::vector<Word>{*x};
    for (const auto& y : parts) {
      if (!w.args.empty() && is_gen_inverse(w.args.back(), y))
        w.args.pop_back();
      else
        w.args.push_back(y);
    }
  }
  if (w.args.empty()) return Word::identity();
  if (w.args.size() == 1) return w.args[0];
  return w;
}

Word power(const Word& a, long long e) {
  if (e == 0 || a.kind == Word::one) return Word::identity();
  if (e == 1) return a;
  if (a.kind == Word::pow) return power(a.args[0], a.e * e);
  return {Word::pow, -1, e, {a}};
}

Word inverse(const Word& a) { return power(a, -1); }

Word commutator(const std::vector<Word>& ws) {
  if (ws.empty()) return Word::identity();
  if (ws.size() == 1) return ws[0];
  return {Word::comm, -1, 0, ws};
}

Word commutator(const Word& a, const Word& b) { return commutator(std::vector<Word>{a, b}); }

Word conjugate(const Word& a, const Word& b) {
  if (b.kind == Word::one) return a;
  return {Word::conj, -1, 0, {a, b}};
}

Word FpGroup::g(const std::string& name) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == name) return Word::generator(int(i));
  throw GroupError("unknown generator " + name);
}

// ---- text form ----------------------------------------------------------
//
//   group    := gens-line NL { relation NL }
//   gens     := ident { "," ident }
//   relation := expr [ "=" expr ]
//   expr     := term { "*" term }
//   term     := factor { "^" ( ["-"] integer | factor ) }
//   factor   := ident | "1" | "(" expr { "," expr } ")" | "[" expr "," expr { "," expr } "]"
//
// x^n is a power, x^y with y a factor is conjugation y^-1 x y; (a,b) and
// [a,b] are the commutator a^-1 b^-1 a b, and longer lists are left-normed.
// "#" starts a comment.

namespace {

struct Parser {
  const FpGroup& F;
  std::string s;
  size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) {
    throw GroupError("parse error at column " + std::to_string(i + 1) + ": " + what + " in \"" + s + "\"");
  }
  bool at_digit() {
    ws();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  long long integer() {
    ws();
    size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) fail("expected integer");
    return std::stoll(s.substr(st, i - st));
  }

  Word factor() {
    ws();
    if (i >= s.size()) fail("unexpected end");
    char c = s[i];
    if (c == '(' || c == '[') {
      ++i;
      char close = c == '(' ? ')' : ']';
      std::vector<Word> parts{expr()};
      while (eat(',')) parts.push_back(expr());
      expect(close);
      if (parts.size() == 1) {
        if (c == '[') fail("commutator needs two entries");
        return parts[0];
      }
      return commutator(parts);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (integer() != 1) fail("only 1 may stand as a literal");
      return Word::identity();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t st = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      return F.g(s.substr(st, i - st));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Word term() {
    Word w = factor();
    while (eat('^')) {
      if (eat('-')) {
        w = power(w, -integer());
      } else if (at_digit()) {
        w = power(w, integer());
      } else {
        w = conjugate(w, factor());
      }
    }
    return w;
  }

  Word expr() {
    Word w = term();
    while (eat('*')) w = w * term();
    return w;
  }

  Word relation() {
    Word l = expr();
    if (eat('=')) l = l * inverse(expr());
    ws();
    if (i != s.size()) fail("trailing input");
    return l;
  }
};

std::string strip(const std::string& line) {
  std::string t = line.substr(0, line.find('#'));
  size_t a = t.find_first_not_of(" \t\r"), b = t.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : t.substr(a, b - a + 1);
}

}  // namespace

FpGroup parse_fp_group(const std::string& text) {
  FpGroup F;
  std::istringstream in(text);
  std::string line;
  bool have_gens = false;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty()) continue;
    if (!have_gens) {
      std::istringstream gs(line);
      std::string name;
      while (std::getline(gs, name, ',')) {
        name = strip(name);
        if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
          throw GroupError("bad generator name \"" + name + "\"");
        for (char ch : name)
          if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
            throw GroupError("bad generator name \"" + name + "\"");
        F.gens.push_back(name);
      }
      have_gens = true;
      continue;
    }
    Parser P{F, line};
    F.relators.push_back(P.relation());
  }
  if (!have_gens) throw GroupError("missing generator line");
  return F;
}

Word parse_word(const FpGroup& F, const std::string& text) {
  Parser P{F, text};
  Word w = P.expr();
  P.ws();
  if (P.i != P.s.size()) P.fail("trailing input");
  return w;
}

std::string format_word(const FpGroup& F, const Word& w) {
  switch (w.kind) {
    case Word::one: return "1";
    case Word::gen: return F.gens[w.g];
    case Word::mul: {
      std::string s;
      for (size_t k = 0; k < w.args.size(); ++k) s += (k ? "*" : "") + format_word(F, w.args[k]);
      return s;
    }
    case Word::pow: {
      const Word& b = w.args[0];
      std::string base = format_word(F, b);
      if (b.kind == Word::mul || b.kind == Word::pow || b.kind == Word::conj) base = "(" + base + ")";
      return base + "^" + std::to_string(w.e);
    }
    case Word::comm: {
      std::string s = "[";
      for (size_t k = 0; k < w.args.size(); ++k) s += (k ? "," : "") + format_word(F, w.args[k]);
      return s + "]";
    }
    case Word::conj: {
      auto wrap = [&](const Word& x) {
        std::string t = format_word(F, x);
        return (x.kind == Word::gen || x.kind == Word::comm) ? t : "(" + t + ")";
      };
      return wrap(w.args[0]) + "^" + wrap(w.args[1]);
    }
  }
  return "";
}

std::string format_fp_group(const FpGroup& F) {
  std::string s;
  for (size_t k = 0; k < F.gens.size(); ++k) s += (k ? ", " : "") + F.gens[k];
  s += "\n";
  for (const auto& r : F.relators) s += format_word(F, r) + "\n";
  return s;
}

Exps evaluate(const PcGroup& G, const std::vector<Exps>& images, const Word& w) {
  switch (w.kind) {
    case Word::one: return G.id();
    case Word::gen: return images.at(w.g);
    case Word::mul: {
      Exps r = G.id();
      for (const auto& x : w.args) G.mul_into(r, evaluate(G, images, x), G.n());
      return r;
    }
    case Word::pow: return G.pow(evaluate(G, images, w.args[0]), w.e);
    case Word::comm: {
      Exps r = evaluate(G, images, w.args[0]);
      for (size_t k = 1; k < w.args.size(); ++k) r = G.comm(r, evaluate(G, images, w.args[k]));
      return r;
    }
    case Word::conj: return G.conj(evaluate(G, images, w.args[0]), evaluate(G, images, w.args[1]));
  }
  return G.id();
}

std::vector<int> exponent_sums(const Word& w, int ngens, int p) {
  std::vector<int> v(ngens, 0);
  switch (w.kind) {
    case Word::one:
    case Word::comm: break;
    case Word::gen: v[w.g] = 1 % p; break;
    case Word::mul:
      for (const auto& x : w.args) {
        auto s = exponent_sums(x, ngens, p);
        for (int t = 0; t < ngens; ++t) v[t] = (v[t] + s[t]) % p;
      }
      break;
    case Word::pow: {
      auto s = exponent_sums(w.args[0], ngens, p);
      int m = mod(w.e, p);
      for (int t = 0; t < ngens; ++t) v[t] = s[t] * m % p;
      break;
    }
    case Word::conj: v = exponent_sums(w.args[0], ngens, p); break;
  }
  return v;
}

}  // namespace ptree
