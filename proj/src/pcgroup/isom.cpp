#include "ptree/isom.hpp"

#include <algorithm>
#include <sstream>

#include "ptree/linalg.hpp"
#include "ptree/present.hpp"
#include "ptree/subgroup.hpp"

namespace ptree {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "undetermined";
  }
}

namespace {

std::vector<int> weight_counts(const PcGroup& G) {
  std::vector<int> c(G.pclass() + 1, 0);
  for (int w : G.weights) ++c[w];
  return c;
}

struct Lifter {
  const PcGroup& G;
  const PcGroup& H;
  int d, c, p;
  long long budget, nodes = 0;
  bool exhausted = false;
  std::vector<Exps> found;

  Lifter(const PcGroup& g, const PcGroup& h, long long b)
      : G(g), H(h), d(g.weight_prefix(1)), c(h.pclass()), p(g.p()), budget(b) {}

  Exps eval(const std::vector<Exps>& img, const Exps& v, int lim) const {
    Exps r = H.id();
    for (int t = 0; t < G.n(); ++t)
      if (v[t]) H.mul_into(r, H.pow(img[t], v[t], lim), lim);
    return r;
  }

  std::vector<Exps> images(const std::vector<Exps>& h, int k) const {
    const int lim = H.weight_prefix(k);
    std::vector<Exps> img(G.n());
    for (int i = 0; i < G.n(); ++i) {
      if (i < d) {
        img[i] = h[i];
        for (int t = lim; t < H.n(); ++t) img[i][t] = 0;
        continue;
      }
      const auto& df = G.defs[i];
      if (G.weights[i] > k) {
        img[i] = H.id();
      } else if (df.kind == Definition::comm) {
        img[i] = H.comm(img[df.j], img[df.i], lim);
      } else {
        img[i] = H.pow(img[df.j], p, lim);
      }
    }
    return img;
  }

  // all relations of G hold for the images modulo P_k(H)
  bool holds(const std::vector<Exps>& h, int k) const {
    const int lim = H.weight_prefix(k);
    auto img = images(h, k);
    for (int j = 0; j < G.n(); ++j) {
      if (G.weights[j] < k && H.pow(img[j], p, lim) != eval(img, G.power(j), lim)) return false;
      for (int i = 0; i < j; ++i) {
        if (G.weights[i] + G.weights[j] > k) continue;  // commutator lies in P_k
        if (H.comm(img[j], img[i], lim) != eval(img, G.comm_rel(j, i), lim)) return false;
      }
    }
    return true;
  }

  // choose the offsets in layer k (weight k+1 generators of H)
  bool level(int k, std::vector<Exps>& h) {
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    if (k + 1 >= c) {  // remaining layers do not affect the relations
      found = h;
      return true;
    }
    const int lo = H.weight_prefix(k), hi = H.weight_prefix(k + 1);
    const int L = hi - lo;
    // offsets modulo those produced by conjugating with elements of P_{k-1}
    Echelon I(p, d * L);
    for (int z = H.weight_prefix(k - 1); z < lo; ++z) {
      Row r(d * L, 0);
      for (int i = 0; i < d; ++i) {
        Exps cz = H.comm(h[i], H.gen(z), hi);
        for (int t = 0; t < L; ++t) r[i * L + t] = cz[lo + t];
      }
      I.add(r);
    }
    std::vector<char> piv(d * L, 0);
    for (int q : I.pivots()) piv[q] = 1;
    std::vector<int> free;
    for (int q = 0; q < d * L; ++q)
      if (!piv[q]) free.push_back(q);
    long long total = 1;
    for (size_t t = 0; t < free.size(); ++t) total *= p;
    std::vector<int> off(free.size(), 0);
    for (long long t = 0; t < total; ++t) {
      std::vector<Exps> g = h;
      for (size_t f = 0; f < free.size(); ++f) {
        if (!off[f]) continue;
        int i = free[f] / L, pos = lo + free[f] % L;
        g[i] = H.mul(g[i], H.gen(pos, off[f]), hi);
      }
      if (holds(g, k + 2) && level(k + 1, g)) return true;
      if (exhausted) return false;
      for (size_t f = 0; f < free.size(); ++f) {
        if (++off[f] < p) break;
        off[f] = 0;
      }
    }
    return false;
  }
};

std::vector<std::vector<Exps>> frattini_bases(const PcGroup& H, int d) {
  std::vector<std::vector<Exps>> out;
  const int p = H.p();
  long long per = 1;
  for (int t = 0; t < d; ++t) per *= p;
  long long total = 1;
  for (int i = 0; i < d; ++i) total *= per;
  for (long long code = 0; code < total; ++code) {
    long long x = code;
    Echelon E(p, d);
    std::vector<Exps> imgs;
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      Row r(d);
      for (int t = 0; t < d; ++t) {
        r[t] = int(x % p);
        x /= p;
      }
      ok = E.add(r);
      Exps v = H.id();
      for (int t = 0; t < d; ++t) v[t] = r[t];
      imgs.push_back(v);
    }
    if (ok) out.push_back(imgs);
  }
  return out;
}

}  // namespace

SearchResult find_isomorphism(const PcGroup& G, const PcGroup& H, long long budget,
                              const std::vector<std::vector<Exps>>* level0) {
  if (!G.standard || !H.standard) throw GroupError("find_isomorphism needs standard presentations");
  if (G.p() != H.p()) throw GroupError("prime-mismatch");
  SearchResult res;
  if (G.n() != H.n() || weight_counts(G) != weight_counts(H)) return res;
  const int d = G.weight_prefix(1);
  Lifter L(G, H, budget);
  std::vector<std::vector<Exps>> cand = level0 ? *level0 : frattini_bases(H, d);
  for (auto& h : cand) {
    if (H.pclass() >= 2 && !L.holds(h, 2)) continue;
    if (L.level(1, h)) {
      res.verdict = Verdict::yes;
      res.images = L.found;
      break;
    }
    if (L.exhausted) {
      res.verdict = Verdict::undetermined;
      break;
    }
  }
  res.nodes = L.nodes;
  return res;
}

std::string fingerprint(const PcGroup& G0) {
  const PcGroup G = standard_form(G0);
  std::ostringstream os;
  os << "p" << G.p() << " n" << G.n() << " P";
  for (int c : weight_counts(G)) os << "." << c;
  os << " L";
  for (const auto& s : lower_central_series(G)) os << "." << s.logorder();
  os << " D";
  auto ds = derived_series(G);
  for (const auto& s : ds) os << "." << s.logorder();
  os << " ab" << format_type(abelian_invariants(G));
  if (ds.size() > 1) os << " ab'" << format_type(abelian_invariants(G, ds[1]));
  // abelian invariants of the maximal subgroups, as a multiset
  const int d = G.weight_prefix(1);
  if (d >= 1 && d <= 3) {
    std::vector<Exps> fr;
    for (int i = d; i < G.n(); ++i) fr.push_back(G.gen(i));
    Subgroup Phi = closure(G, fr);
    std::vector<std::string> mt;
    // hyperplanes of G/Phi: kernels of nonzero functionals up to scalars
    const int p = G.p();
    long long total = 1;
    for (int t = 0; t < d; ++t) total *= p;
    for (long long code = 1; code < total; ++code) {
      Row f(d);
      long long x = code;
      for (int t = 0; t < d; ++t) {
        f[t] = int(x % p);
        x /= p;
      }
      int lead = 0;
      while (!f[lead]) ++lead;
      if (f[lead] != 1) continue;
      std::vector<Exps> gens = Phi.gens;
      for (int a = 0; a < d; ++a) {
        if (a == lead) continue;
        // a - f[a] * lead lies in the kernel
        Exps v = G.id();
        v[lead] = mod(-f[a], p);
        v[a] = 1;
        gens.push_back(v);
      }
      mt.push_back(format_type(abelian_invariants(G, closure(G, gens))));
    }
    std::sort(mt.begin(), mt.end());
    os << " M";
    for (auto& s : mt) os << s;
  }
  return os.str();
}

}  // namespace ptree
