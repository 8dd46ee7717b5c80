#include <algorithm>

#include "ptree/drivers.hpp"
#include "ptree/present.hpp"

namespace ptree {

namespace {

[[noreturn]] void violation(const std::string& what) { throw DriverError("hypothesis-violation", what); }

}  // namespace

nlohmann::json CoverSet::to_json() const {
  nlohmann::json j = {{"base", fingerprint(base.group)}, {"ell", ell}, {"members", nlohmann::json::array()}};
  for (size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    j["members"].push_back({{"fingerprint", fingerprint(m.g.group)},
                            {"label", section.tree.label(m.vertex)},
                            {"lo", m.g.lo},
                            {"cl", m.g.cl},
                            {"cc", m.g.cc},
                            {"type", m.g.pattern.classification},
                            {"sigma", to_string(m.sigma)},
                            {"schur_sigma", to_string(m.schur_sigma)},
                            {"d2", m.d2}});
  }
  j["shafarevich"] = shafarevich;
  return j;
}

CoverSet compute_cover(const PcGroup& M0, RootSide side, long long budget) {
  PcGroup M = standard_form(M0);
  if (abelian_invariants(M) != std::vector<int>{1, 1}) violation("abelianization is not (3,3)");
  if (derived_series(M).size() > 3) violation("not metabelian");
  ArtinPattern pat = artin_pattern(M);
  pat.classification = classify_tkt(pat, side);
  if (!is_admissible(pat, 1, side) && !is_admissible(pat, 2, side)) violation("type " + pat.classification + " is not E");
  const int c = int(lower_central_series(M).size()) - 1;
  if (M.n() - c != 2) violation("coclass is not 2");
  if (c < 4) violation("class below 4");

  const RootVariant variant = RootVariant::from_side(side);
  CoverSet out;
  out.ell = (c - 4) / 2;
  GroupTree& T = out.section;
  T.side = side;

  // M_(c-1)^(r) for every coclass r whose tree reaches class c-1, each
  // reached from the root along the maintrunk and then the mainline
  std::vector<int> parents;
  auto step_to = [&](int v, int s) {
    for (int ch : T.tree.children(v))
      if (T.tree.step(ch) == s) return ch;
    return T.add_child(v, s, scaffold_child(T.at(v), s, side));
  };
  int trunk = T.add_root(tree_root(variant), variant.root_name);  // M_(2r-1)^(r)
  for (int r = 2; 2 * r - 1 <= c - 1; ++r) {
    if (r > 2) trunk = step_to(step_to(trunk, 1), 2);
    int v = trunk;
    for (int k = 2 * r - 1; k < c - 1; ++k) v = step_to(v, 1);
    parents.push_back(v);
  }

  // members: descendants whose metabelianization is M, searched below the
  // parents; a member's parent is again a member, so the search below
  // capable members is complete
  auto matches = [&](const GroupVertex& g) {
    if (g.pattern.classification != pat.classification) return false;
    Verdict v = is_isomorphic(metabelianization(g.group), M, budget);
    if (v == Verdict::undetermined) throw DriverError("isomorphism-budget-exceeded", "cover search");
    return v == Verdict::yes;
  };
  std::vector<int> todo;
  for (int p : parents)
    for (int s = 1; s <= std::min(2, T.at(p).nu); ++s)
      for (auto& g : children_of(T.at(p), s, side))
        if (matches(g)) todo.push_back(T.add_child(p, s, std::move(g)));
  std::vector<int> found;
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    found.push_back(v);
    const GroupVertex& g = T.at(v);
    for (int s = 1; s <= g.nu; ++s)
      for (auto& h : children_of(g, s, side))
        if (matches(h)) todo.push_back(T.add_child(v, s, std::move(h)));
  }

  // the base: the member isomorphic to M itself
  for (int v : found) {
    const GroupVertex& g = T.at(v);
    if (g.lo == M.n() && is_isomorphic(g.group, M, budget) == Verdict::yes) {
      out.base_vertex = v;
      break;
    }
  }
  if (out.base_vertex < 0) violation("not found below the coclass-2 mainline");
  out.base = T.at(out.base_vertex);
  std::stable_sort(found.begin(), found.end(), [&](int a, int b) {
    if ((a == out.base_vertex) != (b == out.base_vertex)) return a == out.base_vertex;
    return T.at(a).lo < T.at(b).lo;
  });
  for (int v : found) {
    CoverMember m;
    m.g = T.at(v);
    m.vertex = v;
    m.sigma = m.g.sigma;
    m.d2 = relation_rank(m.g.group);
    m.schur_sigma = m.sigma == Verdict::yes ? (m.d2 == 2 ? Verdict::yes : Verdict::no) : m.sigma;
    if (m.schur_sigma == Verdict::yes) out.shafarevich.push_back(int(out.members.size()));
    out.members.push_back(std::move(m));
  }
  return out;
}

}  // namespace ptree
