#include "ptree/subgroup.hpp"

#include <algorithm>

namespace ptree {

namespace {

int first_nonzero(const Exps& x) {
  for (int i = 0; i < int(x.size()); ++i)
    if (x[i]) return i;
  return -1;
}

}  // namespace

std::vector<Exps> pc_gens(const PcGroup& G) {
  std::vector<Exps> g;
  for (int i = 0; i < G.n(); ++i) g.push_back(G.gen(i));
  return g;
}

Subgroup closure(const PcGroup& G, const std::vector<Exps>& gens,
                 const std::vector<Exps>* conj) {
  const int n = G.n(), p = G.p();
  std::vector<Exps> tab(n);
  std::vector<char> have(n, 0);
  std::vector<Exps> queue = gens;
  while (!queue.empty()) {
    Exps x = std::move(queue.back());
    queue.pop_back();
    int lead;
    for (;;) {
      lead = first_nonzero(x);
      if (lead < 0 || !have[lead]) break;
      x = G.mul(G.pow(tab[lead], -x[lead]), x);
    }
    if (lead < 0) continue;
    if (x[lead] != 1) x = G.pow(x, inv_mod(x[lead], p));
    tab[lead] = x;
    have[lead] = 1;
    queue.push_back(G.pow(x, p));
    for (int j = 0; j < n; ++j)
      if (have[j] && j != lead) queue.push_back(G.comm(x, tab[j]));
    if (conj)
      for (const auto& c : *conj) queue.push_back(G.comm(x, c));
  }
  Subgroup H;
  for (int i = 0; i < n; ++i)
    if (have[i]) H.leads.push_back(i);
  for (int l : H.leads) {
    Exps g = tab[l];
    for (int m : H.leads)
      if (m > l && g[m]) g = G.mul(g, G.pow(tab[m], -g[m]));
    H.gens.push_back(std::move(g));
  }
  return H;
}

Subgroup whole_group(const PcGroup& G) {
  Subgroup H;
  for (int i = 0; i < G.n(); ++i) {
    H.leads.push_back(i);
    H.gens.push_back(G.gen(i));
  }
  return H;
}

Subgroup normal_closure(const PcGroup& G, const std::vector<Exps>& gens) {
  auto c = pc_gens(G);
  return closure(G, gens, &c);
}

std::vector<int> coords(const PcGroup& G, const Subgroup& H, const Exps& x0) {
  Exps x = x0;
  std::vector<int> c(H.gens.size(), 0);
  for (;;) {
    int q = first_nonzero(x);
    if (q < 0) return c;
    auto it = std::lower_bound(H.leads.begin(), H.leads.end(), q);
    if (it == H.leads.end() || *it != q) return {};
    int k = int(it - H.leads.begin());
    c[k] = x[q];
    x = G.mul(G.pow(H.gens[k], -x[q]), x);
  }
}

bool contains(const PcGroup& G, const Subgroup& H, const Exps& x) {
  if (G.is_id(x)) return true;
  return !coords(G, H, x).empty();
}

bool is_subgroup_of(const PcGroup& G, const Subgroup& H, const Subgroup& K) {
  for (const auto& h : H.gens)
    if (!contains(G, K, h)) return false;
  return true;
}

bool is_normal(const PcGroup& G, const Subgroup& H) {
  for (const auto& h : H.gens)
    for (int i = 0; i < G.n(); ++i)
      if (!contains(G, H, G.comm(h, G.gen(i)))) return false;
  return true;
}

Exps reduce_mod(const PcGroup& G, const Subgroup& N, Exps x) {
  for (size_t k = 0; k < N.leads.size(); ++k) {
    int l = N.leads[k];
    if (x[l]) x = G.mul(x, G.pow(N.gens[k], -x[l]));
  }
  return x;
}

Subgroup join(const PcGroup& G, const Subgroup& H, const Subgroup& K) {
  std::vector<Exps> g = H.gens;
  g.insert(g.end(), K.gens.begin(), K.gens.end());
  return closure(G, g);
}

Subgroup commutator(const PcGroup& G, const Subgroup& H, const Subgroup& K) {
  std::vector<Exps> g;
  for (const auto& h : H.gens)
    for (const auto& k : K.gens) g.push_back(G.comm(h, k));
  return normal_closure(G, g);
}

Subgroup derived_subgroup(const PcGroup& G) {
  auto W = whole_group(G);
  return commutator(G, W, W);
}

Subgroup derived_of(const PcGroup& G, const Subgroup& H) {
  std::vector<Exps> g;
  for (size_t a = 0; a < H.gens.size(); ++a)
    for (size_t b = 0; b < a; ++b) g.push_back(G.comm(H.gens[a], H.gens[b]));
  return closure(G, g, &H.gens);
}

std::vector<Subgroup> lower_central_series(const PcGroup& G) {
  std::vector<Subgroup> s{whole_group(G)};
  auto W = s[0];
  while (s.back().logorder() > 0) s.push_back(commutator(G, s.back(), W));
  return s;
}

std::vector<Subgroup> pcentral_series(const PcGroup& G) {
  std::vector<Subgroup> s{whole_group(G)};
  while (s.back().logorder() > 0) {
    std::vector<Exps> g;
    for (const auto& b : s.back().gens) {
      g.push_back(G.pow(b, G.p()));
      for (int i = 0; i < G.n(); ++i) g.push_back(G.comm(b, G.gen(i)));
    }
    s.push_back(normal_closure(G, g));
  }
  return s;
}

std::vector<Subgroup> derived_series(const PcGroup& G) {
  std::vector<Subgroup> s{whole_group(G)};
  while (s.back().logorder() > 0) {
    auto D = derived_of(G, s.back());
    if (D.logorder() == s.back().logorder()) break;  // cannot happen for p-groups
    s.push_back(D);
  }
  return s;
}

Exps Quotient::image(const PcGroup& G, const Exps& x) const {
  Exps r = reduce_mod(G, kernel, x);
  Exps y(kept.size());
  for (size_t k = 0; k < kept.size(); ++k) y[k] = r[kept[k]];
  return y;
}

Quotient quotient(const PcGroup& G, const Subgroup& N) {
  if (!is_normal(G, N)) throw GroupError("not-normal");
  Quotient q;
  q.kernel = N;
  std::vector<char> lead(G.n(), 0);
  for (int l : N.leads) lead[l] = 1;
  for (int i = 0; i < G.n(); ++i)
    if (!lead[i]) q.kept.push_back(i);
  const int m = int(q.kept.size());
  PcGroup Q(G.p(), m);
  for (int a = 0; a < m; ++a) {
    Q.set_power(a, q.image(G, G.power(q.kept[a])));
    for (int b = 0; b < a; ++b)
      Q.set_comm(a, b, q.image(G, G.comm_rel(q.kept[a], q.kept[b])));
    Q.weights[a] = G.weights[q.kept[a]];
  }
  Q.finalize();
  q.group = std::move(Q);
  return q;
}

PcGroup parent_projection(const PcGroup& G) {
  auto lcs = lower_central_series(G);
  const int c = int(lcs.size()) - 1;
  if (c < 2) throw GroupError("class-1-has-abelian-root-parent");
  return quotient(G, lcs[c - 1]).group;
}

PcGroup subgroup_group(const PcGroup& G, const Subgroup& H) {
  const int m = H.logorder();
  PcGroup S(G.p(), m);
  auto co = [&](const Exps& x) {
    if (G.is_id(x)) return Exps(m, 0);
    auto c = coords(G, H, x);
    if (c.empty()) throw GroupError("element outside subgroup");
    return Exps(c.begin(), c.end());
  };
  for (int a = 0; a < m; ++a) {
    S.set_power(a, co(G.pow(H.gens[a], G.p())));
    for (int b = 0; b < a; ++b) S.set_comm(a, b, co(G.comm(H.gens[a], H.gens[b])));
  }
  S.finalize();
  return S;
}

std::vector<int> abelian_invariants(const PcGroup& G, const Subgroup& H) {
  Subgroup D = derived_of(G, H);
  const int base = D.logorder();
  std::vector<int> r{H.logorder() - base};
  long long q = 1;
  while (r.back() > 0) {
    q *= G.p();
    std::vector<Exps> g = D.gens;
    for (const auto& b : H.gens) g.push_back(G.pow(b, q));
    r.push_back(closure(G, g).logorder() - base);
  }
  // r[k] - r[k+1] cyclic factors have order > p^k
  std::vector<int> inv;
  for (int k = int(r.size()) - 2; k >= 0; --k) {
    int gt_k = r[k] - r[k + 1];
    int gt_k1 = k + 2 < int(r.size()) ? r[k + 1] - r[k + 2] : 0;
    for (int c = 0; c < gt_k - gt_k1; ++c) inv.push_back(k + 1);
  }
  return inv;
}

std::vector<int> abelian_invariants(const PcGroup& G) {
  return abelian_invariants(G, whole_group(G));
}

std::string format_type(const std::vector<int>& t) {
  std::string s = "(";
  bool wide = std::any_of(t.begin(), t.end(), [](int e) { return e > 9; });
  for (size_t i = 0; i < t.size(); ++i) {
    if (wide && i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

}  // namespace ptree
