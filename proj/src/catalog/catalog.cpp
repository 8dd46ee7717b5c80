#include "ptree/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <regex>

#include "ptree/present.hpp"

namespace ptree {

namespace {

long long pow3(int k) {
  long long r = 1;
  while (k-- > 0) r *= 3;
  return r;
}

Word lnc(const Word& a, const Word& b) { return commutator(a, b); }

// [t, a, ..., a] with m entries a
Word iterated(const Word& t, const Word& a, int m) {
  Word w = t;
  for (int k = 0; k < m; ++k) w = lnc(w, a);
  return w;
}

}  // namespace

FpGroup limit_presentation(int sign) {
  if (sign != 1 && sign != -1) throw GroupError("sign must be +1 or -1");
  FpGroup F;
  F.gens = {"a", "t"};
  Word a = F.g("a"), t = F.g("t");
  F.relators.push_back(power(a * t, 3) * power(a, -3));
  F.relators.push_back(commutator({t, a, t}) * power(a, -3 * sign));
  return F;
}

FpGroup mainline_quotient(int sign, int r, int c) {
  if (r < 2 || c < 2 * r - 1) throw GroupError("mainline index out of range: need r >= 2 and c >= 2r-1");
  FpGroup F = limit_presentation(sign);
  Word a = F.g("a"), t = F.g("t");
  F.relators.push_back(power(a, pow3(r)));
  if (c % 2)
    F.relators.push_back(power(lnc(t, a), pow3((c - 1) / 2)));
  else
    F.relators.push_back(power(t, pow3(c / 2)));
  return F;
}

FpGroup cover_limit(int e) {
  if (e != 0 && e != 1) throw GroupError("cover limit parameter must be 0 or 1");
  FpGroup F;
  F.gens = {"a", "t", "u", "y", "z"};
  Word a = F.g("a"), t = F.g("t"), u = F.g("u"), y = F.g("y"), z = F.g("z");
  F.relators = {power(y, 3),
                lnc(a, y),
                lnc(t, y),
                lnc(u, y),
                lnc(y, z),
                lnc(t, z),
                lnc(u, z),
                power(z, 3),
                commutator({u, t, t}),
                commutator({u, t, u}),
                conjugate(t, a) * inverse(u),
                conjugate(u, a) * t * u * y * power(lnc(u, t), -e),
                power(a, 3) * commutator({t, a, t}) * inverse(z)};
  return F;
}

FpGroup cover_quotient(int e, int k, int c) {
  if (c < 4 || k < -1 || k > 1) throw GroupError("cover quotient index out of range: need c >= 4, |k| <= 1");
  FpGroup F = cover_limit(e);
  Word a = F.g("a"), t = F.g("t"), y = F.g("y"), z = F.g("z");
  Word w = iterated(t, a, c - 1);
  Word v = lnc(iterated(t, a, c - 3), lnc(t, a));
  F.relators.push_back(y * power(w, k) * v);
  F.relators.push_back(z * w);
  return F;
}

PcGroup coclass2_group(int c, int alpha, int beta) {
  if (c < 5) throw GroupError("coclass-2 presentation needs class at least 5");
  const int n = c + 2;
  const int x = 0, y = 1, t3 = 3;
  auto s = [](int i) { return i == 2 ? 2 : i + 1; };
  auto v = [&](std::initializer_list<std::pair<int, int>> terms) {
    Exps e(n, 0);
    for (auto [g, k] : terms) e[g] = mod(e[g] + k, 3);
    return e;
  };
  PcGroup G(3, n);
  G.set_comm(y, x, v({{s(2), 1}}));
  G.set_comm(s(2), y, v({{t3, 1}}));
  for (int i = 3; i <= c; ++i) G.set_comm(s(i - 1), x, v({{s(i), 1}}));
  G.set_power(x, v({{s(c), alpha}}));
  G.set_power(y, v({{s(3), 2}, {s(4), 1}, {s(c), beta}}));
  for (int i = 2; i <= c - 3; ++i) G.set_power(s(i), v({{s(i + 2), 2}, {s(i + 3), 1}}));
  G.set_power(s(c - 2), v({{s(c), 2}}));
  G.finalize();
  if (!G.consistent())
    throw GroupError("coclass-2 presentation inconsistent: " + G.consistency_failure());
  return G;
}

const std::vector<Coclass2Entry>& coclass2_table() {
  static const std::vector<Coclass2Entry> t = {
      {0, 0, "c.18"}, {1, 0, "E.6"}, {0, 1, "H.4"}, {0, 2, "H.4"}, {1, 1, "E.14"}, {1, 2, "E.14"}};
  return t;
}

namespace {

std::mutex cache_mu;
std::map<std::string, PcGroup>& memo() {
  static std::map<std::string, PcGroup> m;
  return m;
}

PcGroup quotient_of(const FpGroup& F, int c, bool exact) {
  auto q = p_quotient(F, 3, c);
  if (exact && q.achieved_class != c)
    throw GroupError("p-quotient stopped at class " + std::to_string(q.achieved_class));
  return std::move(q.quotient);
}

PcGroup memoized(const std::string& key, const std::function<PcGroup()>& build) {
  {
    std::lock_guard<std::mutex> lk(cache_mu);
    auto it = memo().find(key);
    if (it != memo().end()) return it->second;
  }
  PcGroup G = build();
  std::lock_guard<std::mutex> lk(cache_mu);
  memo().emplace(key, G);
  return G;
}

}  // namespace

PcGroup mainline_group(int sign, int r, int c) {
  return memoized("L" + std::to_string(sign) + "," + std::to_string(r) + "," + std::to_string(c),
                  [&] { return quotient_of(mainline_quotient(sign, r, c), c, false); });
}

PcGroup cover_group(int e, int k, int c) {
  return memoized("Q" + std::to_string(e) + "," + std::to_string(k) + "," + std::to_string(c),
                  [&] { return quotient_of(cover_quotient(e, k, c), c, false); });
}

PcGroup metabelianization(const PcGroup& G) {
  auto ds = derived_series(G);
  if (ds.size() <= 3) return standard_form(G);
  return standard_form(quotient(G, ds[2]).group);
}

// ---- registry ------------------------------------------------------------

const std::vector<NamedGroup>& named_groups() {
  static const std::vector<NamedGroup> g = {
      {"<9,2>", "L(+,c=1)"},
      {"<27,3>", "L(+,c=2)"},
      {"<243,6>", "L(-,r=2,c=3)"},
      {"<243,8>", "L(+,r=2,c=3)"},
      {"<729,54>", "L(+,r=2,c=4)"},
      {"<2187,303>", "L(+,r=2,c=5)"},
      {"<2187,304>", "meta(Q(e=1,k=0,c=5))"},
      {"<6561,2050>", "L(+,r=2,c=6)"},
      {"<6561,621>", "L(+,r=3,c=5)"},
      {"<6561,622>", "Q(e=1,k=0,c=5)"},
  };
  return g;
}

namespace {

std::string strip_ws(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  return t;
}

PcGroup parse_id(const std::string& id) {
  static const std::regex Lr(R"(L\(([+-]),r=(\d+),c=(\d+)\))");
  static const std::regex Lc(R"(L\(([+-]),c=(\d+)\))");
  static const std::regex Q(R"(Q\(e=([01]),k=(-?\d+),c=(\d+)\))");
  static const std::regex Gp(R"(G\(c=(\d+),a=(\d+),b=(\d+)\))");
  static const std::regex meta(R"(meta\((.*)\))");
  static const std::regex named(R"(<\d+,\d+>)");
  std::smatch m;
  if (std::regex_match(id, m, Lr))
    return mainline_group(m[1] == "+" ? 1 : -1, std::stoi(m[2]), std::stoi(m[3]));
  if (std::regex_match(id, m, Lc)) {
    const int sign = m[1] == "+" ? 1 : -1, c = std::stoi(m[2]);
    return memoized("F" + std::to_string(sign) + "," + std::to_string(c),
                    [&] { return quotient_of(limit_presentation(sign), c, false); });
  }
  if (std::regex_match(id, m, Q)) return cover_group(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
  if (std::regex_match(id, m, Gp)) return coclass2_group(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
  if (std::regex_match(id, m, meta)) return metabelianization(parse_id(m[1]));
  if (std::regex_match(id, named)) {
    for (const auto& g : named_groups())
      if (g.name == id) return parse_id(g.construction);
    throw GroupError("unknown named group " + id);
  }
  throw GroupError("unknown catalog id \"" + id + "\"");
}

}  // namespace

PcGroup catalog_group(const std::string& id) { return parse_id(strip_ws(id)); }

bool is_catalog_id(const std::string& id) {
  static const std::regex any(
      R"((L\([+-](,r=\d+)?,c=\d+\)|Q\(e=[01],k=-?\d+,c=\d+\)|G\(c=\d+,a=\d+,b=\d+\)|<\d+,\d+>|meta\(.*\)))");
  return std::regex_match(strip_ws(id), any);
}

std::optional<std::string> identify(const PcGroup& G) {
  const std::string fp = fingerprint(G);
  for (const auto& g : named_groups()) {
    PcGroup H = catalog_group(g.construction);
    if (H.n() != G.n() || fingerprint(H) != fp) continue;
    if (is_isomorphic(G, H) == Verdict::yes) return g.name;
  }
  return std::nullopt;
}

}  // namespace ptree
