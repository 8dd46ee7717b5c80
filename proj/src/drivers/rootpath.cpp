#include <algorithm>
#include <sstream>

#include "ptree/drivers.hpp"
#include "ptree/present.hpp"

namespace ptree {

namespace {

// a path vertex after X: letter (or "X" for X's own letter), capability
// and the step size of the edge arriving at it from below
struct Token {
  std::string letter;
  bool capable;
  int step;
};

struct Template {
  std::string name;
  std::vector<std::string> X;  // admissible X: letter, with * when capable
  std::vector<Token> tokens;
};

void repeat(std::vector<Token>& v, int n, Token t) {
  for (int i = 0; i < n; ++i) v.push_back(t);
}

void tail(std::vector<Token>& v) {
  v.push_back({"a", true, 2});
  v.push_back({"a", true, 1});
}

std::vector<Template> templates(int r, int c) {
  std::vector<Template> out;
  auto add = [&](std::string name, std::vector<std::string> X, std::vector<Token> t) {
    out.push_back({std::move(name), std::move(X), std::move(t)});
  };
  std::vector<Token> t;
  if (r == 1 && c >= 1) {
    repeat(t, c - 1, {"a", true, 1});
    add("X{→1 a*}^(c-1)", {"A", "a", "a*"}, t);
  }
  if (r == 2 && c >= 3) {
    t.clear();
    repeat(t, c - 3, {"b", true, 1});
    tail(t);
    add("X{→1 b*}^(c-3) →2 a* →1 a*", {"d", "b", "b*"}, t);
    t.clear();
    repeat(t, c - 3, {"c", true, 1});
    tail(t);
    add("X{→1 c*}^(c-3) →2 a* →1 a*", {"E", "G*", "H*", "c*"}, t);
  }
  if (r == 2 && c >= 5) {
    t = {{"X", true, 1}};
    repeat(t, c - 4, {"c", true, 1});
    tail(t);
    add("X →1 X* {→1 c*}^(c-4) →2 a* →1 a*", {"G", "H"}, t);
  }
  if (r >= 3 && c >= r + 1) {
    t.clear();
    repeat(t, c - r - 1, {"b", true, 1});
    repeat(t, r - 2, {"b", true, 2});
    tail(t);
    add("X{→1 b*}^(c-r-1) {→2 b*}^(r-2) →2 a* →1 a*", {"d", "b", "b*"}, t);
    t.clear();
    repeat(t, c - r - 1, {"d", true, 1});
    repeat(t, r - 2, {"b", true, 2});
    tail(t);
    add("X{→1 d*}^(c-r-1) {→2 b*}^(r-2) →2 a* →1 a*", {"F", "G*", "H*", "d*"}, t);
  }
  if (r >= 3 && c >= r + 3) {
    t = {{"X", true, 1}};
    repeat(t, c - r - 2, {"d", true, 1});
    repeat(t, r - 2, {"b", true, 2});
    tail(t);
    add("X →1 X* {→1 d*}^(c-r-2) {→2 b*}^(r-2) →2 a* →1 a*", {"G", "H"}, t);
  }
  if (r == 2 && c == 3) {
    t.clear();
    tail(t);
    add("X →2 a* →1 a*", {"D", "G*", "H*"}, t);
  }
  if (r == 2 && c == 4) {
    t = {{"X", true, 1}};
    tail(t);
    add("X →1 X* →2 a* →1 a*", {"G", "H"}, t);
  }
  if (r >= 3 && c == r + 1) {
    t.clear();
    repeat(t, r - 2, {"b", true, 2});
    tail(t);
    add("X {→2 b*}^(r-2) →2 a* →1 a*", {"F", "G*", "H*"}, t);
  }
  if (r >= 3 && c == r + 2) {
    t = {{"X", true, 1}};
    repeat(t, r - 2, {"b", true, 2});
    tail(t);
    add("X →1 X* {→2 b*}^(r-2) →2 a* →1 a*", {"G", "H"}, t);
  }
  return out;
}

// letters the classifier never assigns: an unlettered vertex may be any
const std::string unlettered = "ADFabd";

bool x_allowed(const RootPathVertex& x, const std::vector<std::string>& allowed) {
  for (const auto& a : allowed) {
    const bool star = a.size() == 2;
    if (star && !x.capable) continue;
    if (x.letter == "?" ? unlettered.find(a[0]) != std::string::npos : x.letter == a.substr(0, 1)) return true;
  }
  return false;
}

}  // namespace

std::string RootPathReport::text() const {
  std::ostringstream os;
  for (size_t i = 0; i < path.size(); ++i) {
    const auto& v = path[i];
    if (i) os << " →" << path[i - 1].step << " ";
    os << v.letter << (v.capable ? "*" : "");
  }
  return os.str();
}

nlohmann::json RootPathReport::to_json() const {
  nlohmann::json p = nlohmann::json::array();
  for (const auto& v : path)
    p.push_back({{"lo", v.lo}, {"cl", v.cl}, {"cc", v.cc}, {"letter", v.letter}, {"type", v.type},
                 {"capable", v.capable}, {"step", v.step}});
  nlohmann::json j = {{"path", p}, {"text", text()}, {"c", c}, {"r", r}, {"X", X}, {"matches", matches}};
  if (!matched()) j["error"] = "no-template-match";
  return j;
}

RootPathReport classify_root_path(const PcGroup& G0) {
  PcGroup H = standard_form(G0);
  if (abelian_invariants(H) != std::vector<int>{1, 1}) throw DriverError("hypothesis-violation", "abelianization is not (3,3)");
  RootPathReport rep;
  for (;;) {
    RootPathVertex v;
    auto lcs = lower_central_series(H);
    v.lo = H.n();
    v.cl = int(lcs.size()) - 1;
    v.cc = v.lo - v.cl;
    ArtinPattern a = artin_pattern(H);
    v.type = kappa_orbit_type(a.kappa);
    v.letter = tkt_letter(a);
    v.capable = nuclear_rank(H) > 0;
    if (v.cl <= 1) {
      rep.path.push_back(v);
      break;
    }
    PcGroup P = standard_form(parent_projection(H));
    v.step = H.n() - P.n();
    rep.path.push_back(v);
    H = std::move(P);
  }
  const RootPathVertex& x = rep.path.front();
  rep.c = x.cl;
  rep.r = x.cc;
  rep.X = x.letter + (x.capable ? "*" : "");
  for (const auto& t : templates(rep.r, rep.c)) {
    if (t.tokens.size() + 1 != rep.path.size() || !x_allowed(x, t.X)) continue;
    bool ok = true;
    for (size_t i = 0; i < t.tokens.size() && ok; ++i) {
      const auto& k = t.tokens[i];
      const auto& p = rep.path[i + 1];
      const std::string want = k.letter == "X" ? x.letter : k.letter;
      ok = p.letter == want && p.capable == k.capable && rep.path[i].step == k.step;
    }
    if (ok) rep.matches.push_back(t.name);
  }
  return rep;
}

}  // namespace ptree
