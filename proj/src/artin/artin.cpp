#include "ptree/artin.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ptree/pcover.hpp"
#include "ptree/present.hpp"

namespace ptree {

std::string to_string(RootSide s) { return s == RootSide::r6 ? "<243,6>" : "<243,8>"; }

std::vector<std::vector<int>> ArtinPattern::tau_sorted() const {
  auto t = tau;
  std::sort(t.begin(), t.end());
  return t;
}

namespace {

void require_pp(const PcGroup& G) {
  if (abelian_invariants(G) != std::vector<int>(2, 1)) throw GroupError("abelianization-not-(p,p)");
}

struct Lists {
  std::vector<Exps> A, B;
};

Lists alist(const PcGroup& G, const std::vector<int>* perm) {
  const int p = G.p();
  Exps x = G.gen(0), y = G.gen(1);
  Lists L;
  L.A.push_back(y);
  L.B.push_back(x);
  for (int e = 0; e < p; ++e) {
    L.A.push_back(G.mul(x, G.pow(y, e)));
    L.B.push_back(y);
  }
  if (perm) {
    Lists P;
    for (int k : *perm) {
      P.A.push_back(L.A.at(k));
      P.B.push_back(L.B.at(k));
    }
    return P;
  }
  return L;
}

Transfer transfer_on(const PcGroup& G, const Lists& L, int i, const Subgroup& DG) {
  const int p = G.p();
  const Exps& a = L.A[i - 1];
  const Exps& b = L.B[i - 1];
  std::vector<Exps> mg = DG.gens;
  mg.push_back(a);
  Subgroup M = closure(G, mg);
  Subgroup DM = derived_of(G, M);
  // A_i -> (A_i B_i^-1)^p B_i^p, B_i -> B_i^p, values in M / M'
  Exps ta = G.mul(G.pow(G.mul(a, G.inv(b)), p), G.pow(b, p));
  Exps tb = G.pow(b, p);
  std::vector<Exps> kgens = DG.gens;
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < p; ++v) {
      if (!u && !v) continue;
      Exps img = G.mul(G.pow(ta, u), G.pow(tb, v));
      if (contains(G, DM, img)) kgens.push_back(G.mul(G.pow(a, u), G.pow(b, v)));
    }
  return {closure(G, kgens), abelian_invariants(G, M)};
}

}  // namespace

Transfer transfer(const PcGroup& G0, int i, const std::vector<int>* perm) {
  const PcGroup G = standard_form(G0);
  require_pp(G);
  if (i < 1 || i > G.p() + 1) throw GroupError("transfer index out of range");
  return transfer_on(G, alist(G, perm), i, derived_subgroup(G));
}

void recount(ArtinPattern& a) {
  const int m = int(a.kappa.size());
  a.nTotal = a.nFixed = a.occupation = a.repetitions = a.intersection = 0;
  std::vector<int> seen;
  for (int i = 0; i < m; ++i) {
    if (a.kappa[i] == 0) ++a.nTotal;
    if (a.kappa[i] == i + 1) ++a.nFixed;
    if (std::find(seen.begin(), seen.end(), a.kappa[i]) == seen.end()) seen.push_back(a.kappa[i]);
  }
  a.occupation = int(seen.size());
  int doublet = 0;
  for (int digit = 1; digit <= m; ++digit) {
    int count = int(std::count(a.kappa.begin(), a.kappa.end(), digit));
    if (count >= 2) doublet = digit;
    a.repetitions = std::max(a.repetitions, count);
  }
  if (doublet >= 1 && a.kappa[doublet - 1] == doublet) a.intersection = 1;
}

ArtinPattern artin_pattern(const PcGroup& G0, const std::vector<int>* perm) {
  const PcGroup G = standard_form(G0);
  require_pp(G);
  const int p = G.p();
  Lists L = alist(G, perm);
  Subgroup DG = derived_subgroup(G);
  const Subgroup all = whole_group(G);
  ArtinPattern a;
  for (int i = 1; i <= p + 1; ++i) {
    Transfer T = transfer_on(G, L, i, DG);
    a.tau.push_back(T.target_type);
    if (T.kernel == all) {
      a.kappa.push_back(0);
      continue;
    }
    int digit = -1;
    for (int j = 1; j <= p + 1; ++j)
      if (contains(G, T.kernel, L.A[j - 1])) digit = j;
    if (digit < 0) throw GroupError("trivial-transfer-kernel");
    a.kappa.push_back(digit);
  }
  recount(a);
  a.classification = "unclassified";
  return a;
}

namespace {

bool h4(const ArtinPattern& a) { return a.nTotal == 0 && a.repetitions == 3 && a.nFixed == 0; }
bool g16(const ArtinPattern& a) { return a.nTotal == 0 && a.nFixed == 2 && a.occupation == 4; }

}  // namespace

bool is_complex_type(const ArtinPattern& a) { return h4(a) || g16(a); }

bool is_admissible(const ArtinPattern& a, int flag, RootSide side) {
  if (side == RootSide::r8) {
    switch (flag) {
      case 0: return a.nTotal == 1 && a.nFixed == 2;
      case 1: return a.nTotal == 0 && a.nFixed == 3;
      case 2: return a.nTotal == 0 && a.nFixed == 2 && a.occupation == 3;
    }
  } else {
    switch (flag) {
      case 0: return a.nTotal == 1 && a.nFixed == 0;
      case 1: return a.nTotal == 0 && a.nFixed == 1;
      case 2: return a.nTotal == 0 && a.nFixed == 0 && a.occupation == 3;
    }
  }
  throw GroupError("admissibility flag must be 0, 1 or 2");
}

bool is_admissible(const PcGroup& G, int flag, RootSide side) {
  return is_admissible(artin_pattern(G), flag, side);
}

std::string classify_tkt(const ArtinPattern& a, RootSide side) {
  static const char* n8[] = {"c.21", "E.8", "E.9"};
  static const char* n6[] = {"c.18", "E.6", "E.14"};
  for (int f = 0; f < 3; ++f)
    if (is_admissible(a, f, side)) return side == RootSide::r8 ? n8[f] : n6[f];
  if (h4(a)) return "H.4";
  if (g16(a)) return "G.16";
  return "unclassified";
}

namespace {

std::string orbit_key(const std::vector<int>& k) {
  std::vector<int> perm(k.size()), where(k.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
  std::string best;
  do {
    for (size_t j = 0; j < perm.size(); ++j) where[perm[j]] = int(j);
    std::string s;
    for (size_t i = 0; i < k.size(); ++i) {
      const int d = k[perm[i]];
      s += char('0' + (d == 0 ? 0 : where[d - 1] + 1));
    }
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::string kappa_orbit_type(const std::vector<int>& kappa) {
  static const std::map<std::string, std::string> table = [] {
    std::map<std::string, std::string> t;
    for (auto [k, n] : std::vector<std::pair<std::vector<int>, const char*>>{
             {{0, 1, 2, 2}, "c.18"}, {{0, 2, 3, 1}, "c.21"}, {{1, 1, 2, 2}, "E.6"}, {{1, 2, 3, 1}, "E.8"},
             {{2, 2, 3, 1}, "E.9"}, {{3, 2, 3, 1}, "E.9"}, {{3, 1, 2, 2}, "E.14"}, {{4, 1, 2, 2}, "E.14"}, {{2, 1, 2, 2}, "H.4"}, {{4, 2, 3, 1}, "G.16"}})
      t[orbit_key(k)] = n;
    return t;
  }();
  if (kappa.size() != 4) return "";
  auto it = table.find(orbit_key(kappa));
  return it == table.end() ? "" : it->second;
}

std::string format_pattern(const ArtinPattern& a) {
  std::ostringstream os;
  os << "κ=";
  for (int d : a.kappa) os << d;
  os << " [N=" << a.nTotal << ",F=" << a.nFixed << ",O=" << a.occupation << ",R=" << a.repetitions
     << ",I=" << a.intersection << "] type=" << a.classification << " τ=";
  for (size_t k = 0; k < a.tau.size(); ++k) os << (k ? "," : "") << format_type(a.tau[k]);
  return os.str();
}

Verdict is_sigma(const PcGroup& G0, long long budget) {
  const PcGroup G = standard_form(G0);
  const int d = G.weight_prefix(1);
  auto ab = abelian_invariants(G);
  if (int(ab.size()) != d || std::any_of(ab.begin(), ab.end(), [](int e) { return e != 1; }))
    throw GroupError("abelianization-not-elementary");
  if (G.n() == 0) return Verdict::yes;
  AutGroup A = automorphism_group(G);
  if (A.gl_complete()) {
    std::vector<Row> minus(d, Row(d, 0));
    for (int i = 0; i < d; ++i) minus[i][i] = G.p() - 1;
    return A.gl_contains(minus) ? Verdict::yes : Verdict::no;
  }
  std::vector<Exps> inv;
  for (int i = 0; i < d; ++i) inv.push_back(G.gen(i, G.p() - 1));
  std::vector<std::vector<Exps>> level0{inv};
  return find_isomorphism(G, G, budget, &level0).verdict;
}

Verdict is_schur_sigma(const PcGroup& G, long long budget) {
  Verdict v = is_sigma(G, budget);
  if (v != Verdict::yes) return v;
  return relation_rank(G) == 2 ? Verdict::yes : Verdict::no;
}

}  // namespace ptree
