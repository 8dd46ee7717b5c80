#include <chrono>
#include <sstream>

#include "ptree/drivers.hpp"
#include "ptree/present.hpp"

namespace ptree {

namespace {

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

nlohmann::json variant_json(const RootVariant& v) {
  return {{"sign", v.sign}, {"e", v.e}, {"side", to_string(v.side)}, {"root", v.root_name}};
}

}  // namespace

bool MainlineReport::ok() const {
  if (!error.empty() || int(steps.size()) != vb + 1) return false;
  for (const auto& s : steps)
    if (!s.confirmed) return false;
  return true;
}

nlohmann::json MainlineReport::to_json() const {
  nlohmann::json j = {{"driver", "verify_mainlines"}, {"variant", variant_json(variant)}, {"hb", hb}, {"vb", vb},
                      {"ok", ok()}, {"seconds", seconds}, {"steps", nlohmann::json::array()}};
  if (!error.empty()) j["error"] = error;
  for (const auto& s : steps)
    j["steps"].push_back({{"r", s.r}, {"c", s.c}, {"status", s.confirmed ? "confirmed" : "unconfirmed"},
                          {"verdict", to_string(s.verdict)}, {"fingerprint", s.fingerprint}, {"seconds", s.seconds}});
  return j;
}

std::string MainlineReport::summary() const {
  std::ostringstream os;
  os << "mainlines " << variant.root_name << " hb=" << hb << " vb=" << vb << "\n";
  for (const auto& s : steps)
    os << "  r=" << s.r << " c=" << s.c << " " << (s.confirmed ? "confirmed" : "UNCONFIRMED (" + to_string(s.verdict) + ")")
       << "\n";
  if (!error.empty()) os << "  error: " << error << "\n";
  int n = 0;
  for (const auto& s : steps) n += s.confirmed;
  os << n << " confirmations" << (ok() ? "" : ", failed") << "\n";
  return os.str();
}

MainlineReport verify_mainlines(const RootVariant& variant, int hb, int vb, long long budget) {
  if (hb < 0 || vb < 1) throw DriverError("bad-arguments", "need hb >= 0 and vb >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  MainlineReport rep;
  rep.variant = variant;
  rep.hb = hb;
  rep.vb = vb;
  try {
    // bottom up: double steps along the maintrunk, then the mainline
    GroupVertex cur = tree_root(variant);
    int r = 2;
    for (int i = 0; i < hb; ++i, ++r) cur = scaffold_child(scaffold_child(cur, 1, variant.side), 2, variant.side);
    for (int j = 0, c = 2 * r - 1; j <= vb; ++j, ++c) {
      const auto t1 = std::chrono::steady_clock::now();
      if (j) cur = scaffold_child(cur, 1, variant.side);
      MainlineStep st;
      st.r = r;
      st.c = c;
      st.fingerprint = fingerprint(cur.group);
      // top down
      st.verdict = is_isomorphic(cur.group, mainline_group(variant.sign, r, c), budget);
      st.confirmed = st.verdict == Verdict::yes;
      st.seconds = since(t1);
      rep.steps.push_back(st);
      if (st.verdict == Verdict::undetermined && rep.error.empty()) rep.error = "isomorphism-budget-exceeded";
    }
  } catch (const DriverError& e) {
    rep.error = e.code;
  }
  rep.seconds = since(t0);
  return rep;
}

bool CoverReport::ok() const {
  if (!error.empty() || int(steps.size()) != vb) return false;
  for (const auto& s : steps)
    if (!s.confirmed) return false;
  return true;
}

nlohmann::json CoverReport::to_json() const {
  nlohmann::json j = {{"driver", "verify_cover"}, {"variant", variant_json(variant)}, {"k", k}, {"vb", vb},
                      {"ok", ok()}, {"seconds", seconds}, {"steps", nlohmann::json::array()}};
  if (!error.empty()) j["error"] = error;
  for (const auto& s : steps)
    j["steps"].push_back({{"c", s.c}, {"status", s.confirmed ? "confirmed" : "unconfirmed"},
                          {"relators_checked", s.relators_checked}, {"leaves", s.leaves},
                          {"leaf_ordinal", s.leaf_ordinal}, {"leaf_type", s.leaf_type},
                          {"fingerprint", s.fingerprint}, {"seconds", s.seconds}});
  return j;
}

std::string CoverReport::summary() const {
  std::ostringstream os;
  os << "covers " << variant.root_name << " e=" << variant.e << " k=" << k << " vb=" << vb << "\n";
  for (const auto& s : steps) {
    os << "  c=" << s.c << " ";
    if (s.confirmed)
      os << "confirmed against " << s.leaf_type << " leaf " << s.leaf_ordinal << " of " << s.leaves;
    else
      os << "UNCONFIRMED";
    os << "\n";
  }
  if (!error.empty()) os << "  error: " << error << "\n";
  int n = 0;
  for (const auto& s : steps) n += s.confirmed;
  os << n << " confirmations" << (ok() ? "" : ", failed") << "\n";
  return os.str();
}

CoverReport verify_cover(const RootVariant& variant, int vb, int k, long long budget) {
  if (vb < 1) throw DriverError("bad-arguments", "need vb >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  CoverReport rep;
  rep.variant = variant;
  rep.k = k;
  rep.vb = vb;
  const int flag = k == 0 ? 1 : 2;
  try {
    GroupVertex root = tree_root(variant);
    for (int i = 1; i <= vb; ++i) {
      const auto t1 = std::chrono::steady_clock::now();
      const int c = i + 3;
      CoverStep st;
      st.c = c;
      auto q = p_quotient(cover_quotient(variant.e, k, c), 3, c);
      st.relators_checked = q.relators_checked;
      PcGroup Q = standard_form(q.quotient);
      st.fingerprint = fingerprint(Q);
      PcGroup target = metabelianization(Q);

      std::optional<GroupVertex> next;
      for (auto& g : children_of(root, 1, variant.side)) {
        if (is_admissible(g.pattern, 0, variant.side) && g.capable()) {
          if (next) throw DriverError("multiple-admissible-children", "class " + std::to_string(c));
          next = std::move(g);
          continue;
        }
        if (!is_admissible(g.pattern, flag, variant.side)) continue;
        ++st.leaves;
        if (st.leaf_ordinal) continue;
        Verdict v = is_isomorphic(g.group, target, budget);
        if (v == Verdict::undetermined && rep.error.empty()) rep.error = "isomorphism-budget-exceeded";
        if (v == Verdict::yes) {
          st.leaf_ordinal = st.leaves;
          st.leaf_type = g.pattern.classification;
        }
      }
      st.confirmed = st.leaf_ordinal > 0 && st.relators_checked;
      st.seconds = since(t1);
      rep.steps.push_back(st);
      if (i == vb) break;
      if (!next) throw DriverError("no-admissible-child", "class " + std::to_string(c));
      root = std::move(*next);
    }
  } catch (const DriverError& e) {
    rep.error = e.code;
  }
  rep.seconds = since(t0);
  return rep;
}

}  // namespace ptree
