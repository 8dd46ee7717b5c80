#include "ptree/autgroup.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ptree/io.hpp"
#include "ptree/present.hpp"

namespace ptree {

std::vector<Exps> extend_images(const PcGroup& G, const PcGroup& H, const std::vector<Exps>& w1, int limit) {
  const int d = G.weight_prefix(1);
  std::vector<Exps> img(G.n());
  for (int i = 0; i < G.n(); ++i) {
    if (i < d) {
      img[i] = w1.at(i);
      for (int t = limit; t < H.n(); ++t) img[i][t] = 0;
      continue;
    }
    const auto& df = G.defs[i];
    if (df.kind == Definition::comm)
      img[i] = H.comm(img[df.j], img[df.i], limit);
    else if (df.kind == Definition::power)
      img[i] = H.pow(img[df.j], G.p(), limit);
    else
      throw GroupError("generator without definition");
  }
  return img;
}

Exps map_element(const PcGroup& H, const std::vector<Exps>& full, const Exps& x, int limit) {
  Exps r = H.id();
  for (size_t t = 0; t < x.size(); ++t)
    if (x[t]) H.mul_into(r, H.pow(full[t], x[t], limit), limit);
  return r;
}

PcGroup prefix_group(const PcGroup& G, int k) {
  if (!G.standard) throw GroupError("prefix_group needs a standard presentation");
  const int m = G.weight_prefix(k);
  PcGroup Q(G.p(), m);
  auto cut = [&](const Exps& v) { return Exps(v.begin(), v.begin() + m); };
  for (int j = 0; j < m; ++j) {
    Q.set_power(j, cut(G.power(j)));
    for (int i = 0; i < j; ++i) Q.set_comm(j, i, cut(G.comm_rel(j, i)));
  }
  Q.weights.assign(G.weights.begin(), G.weights.begin() + m);
  Q.defs.assign(G.defs.begin(), G.defs.begin() + m);
  Q.standard = true;
  Q.finalize();
  return Q;
}

namespace {

// images of the tails of C under the homomorphism with the given images
// of the base generators, each tail being rhs^-1 lhs of its relation
std::vector<Exps> tail_images(const PCover& C, const PcGroup& H, const std::vector<Exps>& base_full, int limit) {
  const PcGroup& S = C.base;
  const int n = S.n(), p = S.p();
  std::vector<Exps> out;
  for (int f = 0; f < C.mu; ++f) {
    const auto& df = C.cover.defs[n + f];
    Exps lhs, rhs;
    if (df.kind == Definition::power) {
      lhs = H.pow(base_full[df.j], p, limit);
      rhs = map_element(H, base_full, S.power(df.j), limit);
    } else {
      lhs = H.comm(base_full[df.j], base_full[df.i], limit);
      rhs = map_element(H, base_full, S.comm_rel(df.j, df.i), limit);
    }
    out.push_back(H.left_div(rhs, lhs, limit));
  }
  return out;
}

Row coords_from(const Exps& x, int lo, int hi, const char* what) {
  for (int t = 0; t < lo; ++t)
    if (x[t]) throw GroupError(std::string("element outside ") + what);
  return Row(x.begin() + lo, x.begin() + hi);
}

void add_factors(std::map<long long, int>& f, long long x, int sign) {
  for (long long q = 2; q * q <= x; ++q)
    while (x % q == 0) {
      f[q] += sign;
      x /= q;
    }
  if (x > 1) f[x] += sign;
  for (auto it = f.begin(); it != f.end();) it = it->second == 0 ? f.erase(it) : std::next(it);
}

int primitive_root(int p) {
  for (int g = 1; g < p; ++g) {
    int x = 1, ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return g;
  }
  return 1;
}

}  // namespace

// ---- AutGroup -------------------------------------------------------------

AutGroup::AutGroup(const PcGroup& G) : G_(G), d_(G.weight_prefix(1)), c_(G.pclass()) {
  if (!G.standard) throw GroupError("automorphism groups need a standard presentation");
  // the image in GL(d,p) is enumerated only when GL(d,p) is small
  double gl = 1;
  for (int i = 0; i < d_; ++i) gl *= std::pow(double(G.p()), d_) - std::pow(double(G.p()), i);
  gl_complete_ = gl <= 2000;
  layer_.resize(std::max(c_, 1));
  glreps_.emplace(gl_key(identity()), identity());
}

Automorphism AutGroup::identity() const {
  std::vector<Exps> g;
  for (int i = 0; i < G_.n(); ++i) g.push_back(G_.gen(i));
  return {g, g};
}

Automorphism AutGroup::make(const std::vector<Exps>& w1) const {
  const int n = G_.n(), p = G_.p();
  auto fwd = extend_images(G_, G_, w1, n);
  for (int j = 0; j < n; ++j) {
    if (G_.pow(fwd[j], p) != map_element(G_, fwd, G_.power(j), n)) throw GroupError("not a homomorphism");
    for (int i = 0; i < j; ++i)
      if (G_.comm(fwd[j], fwd[i]) != map_element(G_, fwd, G_.comm_rel(j, i), n))
        throw GroupError("not a homomorphism");
  }
  // preimages of the weight-1 generators, one layer at a time
  std::vector<Exps> pre;
  for (int i = 0; i < d_; ++i) {
    Exps x = G_.id();
    for (int k = 1; k <= c_; ++k) {
      const int lo = G_.weight_prefix(k - 1), hi = G_.weight_prefix(k);
      Exps r = G_.left_div(map_element(G_, fwd, x, n), G_.gen(i), n);
      Row v = coords_from(r, lo, hi, "series term");
      Echelon E(p, hi - lo);
      for (int t = lo; t < hi; ++t) E.add(coords_from(fwd[t], lo, hi, "series term"));
      if (E.rank() != hi - lo) throw GroupError("not an automorphism");
      auto u = E.solve(v);
      for (int t = lo; t < hi; ++t)
        if (u[t - lo]) x = G_.mul(x, G_.gen(t, u[t - lo]));
    }
    if (map_element(G_, fwd, x, n) != G_.gen(i)) throw GroupError("not an automorphism");
    pre.push_back(x);
  }
  return {fwd, extend_images(G_, G_, pre, n)};
}

Automorphism AutGroup::then(const Automorphism& x, const Automorphism& y) const {
  const int n = G_.n();
  std::vector<Exps> f, b;
  for (int i = 0; i < d_; ++i) {
    f.push_back(map_element(G_, y.fwd, x.fwd[i], n));
    b.push_back(map_element(G_, x.bwd, y.bwd[i], n));
  }
  return {extend_images(G_, G_, f, n), extend_images(G_, G_, b, n)};
}

Automorphism AutGroup::inverse(const Automorphism& x) const { return {x.bwd, x.fwd}; }

Exps AutGroup::apply(const Automorphism& a, const Exps& x) const { return map_element(G_, a.fwd, x, G_.n()); }

bool AutGroup::is_identity(const Automorphism& a) const {
  for (int i = 0; i < d_; ++i)
    if (a.fwd[i] != G_.gen(i)) return false;
  return true;
}

Row AutGroup::gl_key(const Automorphism& a) const {
  Row k;
  for (int i = 0; i < d_; ++i) k.insert(k.end(), a.fwd[i].begin(), a.fwd[i].begin() + d_);
  return k;
}

Row AutGroup::layer_vec(const Automorphism& a, int j) const {
  const int lo = G_.weight_prefix(j), hi = G_.weight_prefix(j + 1);
  Row v;
  for (int i = 0; i < d_; ++i) {
    Row r = coords_from(G_.left_div(G_.gen(i), a.fwd[i], G_.n()), lo, hi, "layer");
    v.insert(v.end(), r.begin(), r.end());
  }
  return v;
}

void AutGroup::close_gl() {
  std::vector<Automorphism> queue;
  for (auto& [k, r] : glreps_) queue.push_back(r);
  while (!queue.empty()) {
    Automorphism r = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : glgens_) {
      Automorphism y = then(r, g);
      Row k = gl_key(y);
      if (glreps_.count(k)) continue;
      glreps_.emplace(k, y);
      queue.push_back(std::move(y));
    }
  }
}

void AutGroup::add(const Automorphism& a) {
  if (is_identity(a)) return;
  const int p = G_.p();
  Row key = gl_key(a);
  auto it = glreps_.find(key);
  if (it == glreps_.end()) {
    gens_.push_back(a);
    glgens_.push_back(a);
    if (gl_complete_)
      close_gl();
    else
      glreps_.emplace(key, a);
    return;
  }
  Automorphism x = then(a, inverse(it->second));
  for (int j = 1; j < c_; ++j) {
    Row v = layer_vec(x, j);
    for (const auto& s : layer_[j]) {
      int e = mod(v[s.piv] * inv_mod(s.vec[s.piv], p), p);
      if (!e) continue;
      Automorphism si = inverse(s.a);
      for (int t = 0; t < e; ++t) x = then(x, si);
      for (size_t q = 0; q < v.size(); ++q) v[q] = mod(v[q] - e * s.vec[q], p);
    }
    auto nz = std::find_if(v.begin(), v.end(), [](int e) { return e != 0; });
    if (nz != v.end()) {
      layer_[j].push_back({x, v, int(nz - v.begin())});
      gens_.push_back(std::move(x));
      return;
    }
  }
  if (!is_identity(x)) throw GroupError("sifting left a nontrivial automorphism");
}

std::string AutGroup::order_string() const {
  if (!order_factors) return "unknown";
  std::ostringstream os;
  bool first = true;
  for (auto [q, e] : *order_factors) {
    os << (first ? "" : "*") << q;
    if (e != 1) os << "^" << e;
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

// ---- orbits on subspaces ----------------------------------------------------

std::vector<Row> canonical_span(int p, const std::vector<Row>& rows) {
  if (rows.empty()) return {};
  Echelon E(p, int(rows[0].size()));
  for (const auto& r : rows) E.add(r);
  E.make_reduced();
  std::vector<std::pair<int, Row>> byp;
  for (int k = 0; k < E.rank(); ++k) byp.push_back({E.pivots()[k], E.rows()[k]});
  std::sort(byp.begin(), byp.end());
  std::vector<Row> out;
  for (auto& [pv, r] : byp) out.push_back(r);
  return out;
}

std::vector<Row> multiplicator_action(const PCover& C, const AutGroup& A, const Automorphism& a) {
  const int n = C.base.n(), N = C.cover.n();
  std::vector<Exps> w1;
  for (int i = 0; i < C.d; ++i) {
    Exps v(N, 0);
    std::copy(a.fwd[i].begin(), a.fwd[i].end(), v.begin());
    w1.push_back(v);
  }
  (void)A;
  auto full = extend_images(C.base, C.cover, w1, N);
  std::vector<Row> M;
  for (const auto& t : tail_images(C, C.cover, full, N)) M.push_back(coords_from(t, n, N, "multiplicator"));
  return M;
}

namespace {

std::vector<Row> act(int p, const std::vector<Row>& U, const std::vector<Row>& M) {
  std::vector<Row> out;
  for (const auto& u : U) {
    Row v(M.empty() ? 0 : M[0].size(), 0);
    for (size_t r = 0; r < u.size(); ++r)
      if (u[r])
        for (size_t c = 0; c < v.size(); ++c) v[c] = (v[c] + u[r] * M[r][c]) % p;
    out.push_back(v);
  }
  return canonical_span(p, out);
}

struct OrbitData {
  std::vector<std::vector<Row>> points;
  std::map<std::vector<Row>, size_t> idx;
  std::vector<Automorphism> trans;  // trans[k] maps points[0] to points[k]
  std::vector<Automorphism> stab;
  bool truncated = false;
};

// limit bounds the orbit length; a longer orbit is reported as truncated
OrbitData orbit_stabilizer(const PCover& C, const AutGroup& A, const std::vector<std::vector<Row>>& mats,
                           const std::vector<Row>& U, long long limit = -1) {
  const int p = C.base.p();
  OrbitData o;
  o.points.push_back(U);
  o.idx.emplace(U, 0);
  o.trans.push_back(A.identity());
  AutGroup S(A.group());
  const auto& gens = A.generators();
  for (size_t w = 0; w < o.points.size(); ++w) {
    for (size_t q = 0; q < gens.size(); ++q) {
      auto W = act(p, o.points[w], mats[q]);
      auto it = o.idx.find(W);
      if (it == o.idx.end()) {
        if (limit >= 0 && (long long)o.points.size() >= limit) {
          o.truncated = true;
          return o;
        }
        o.idx.emplace(W, o.points.size());
        o.points.push_back(W);
        o.trans.push_back(A.then(o.trans[w], gens[q]));
        continue;
      }
      Automorphism s = A.then(A.then(o.trans[w], gens[q]), A.inverse(o.trans[it->second]));
      S.add(s);
    }
  }
  o.stab = S.generators();
  return o;
}

// kernel of the map from the multiplicator of Q onto the top layer of Qn,
// where Q = Qn / P_k(Qn) on the same generators
std::vector<Row> layer_kernel(const PCover& C, const PcGroup& Qn) {
  const PcGroup& Q = C.base;
  const int d = Q.weight_prefix(1), p = Q.p();
  std::vector<Exps> w1;
  for (int i = 0; i < d; ++i) w1.push_back(Qn.gen(i));
  auto full = extend_images(Q, Qn, w1, Qn.n());
  const int lo = Q.n(), hi = Qn.n(), L = hi - lo;
  Echelon E(p, L);
  for (const auto& t : tail_images(C, Qn, full, hi)) E.add(coords_from(t, lo, hi, "last layer"));
  if (E.rank() != L) throw GroupError("layer not covered by the multiplicator");
  return canonical_span(p, E.dependencies());
}

AutGroup general_linear(const PcGroup& Q) {
  const int d = Q.n(), p = Q.p();
  AutGroup A(Q);
  std::vector<Exps> base;
  for (int i = 0; i < d; ++i) base.push_back(Q.gen(i));
  if (d >= 1) {
    auto w = base;
    w[0] = Q.gen(0, primitive_root(p));
    A.add(A.make(w));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      auto w = base;
      w[i] = Q.mul(Q.gen(i), Q.gen(j));
      A.add(A.make(w));
    }
  std::map<long long, int> order;
  long long q = 1;
  for (int i = 0; i < d; ++i) q *= p;
  long long pi = 1;
  for (int i = 0; i < d; ++i) {
    add_factors(order, q - pi, 1);
    pi *= p;
  }
  A.order_factors = order;
  return A;
}

struct Level {
  PCover C;      // cover of G / P_k
  AutGroup A;    // Aut(G / P_k)
  OrbitData orbit;  // orbit of the kernel onto G / P_(k+1)
};

// Aut(G) built up the series; visit sees every level before lifting.
// Returns false if some orbit exceeded the limit.
bool tower(const PcGroup& G, AutGroup& out, long long limit, const std::function<bool(Level&)>& visit) {
  if (!G.standard) throw GroupError("automorphism groups need a standard presentation");
  const int c = G.pclass(), p = G.p(), d = G.weight_prefix(1);
  AutGroup A = general_linear(prefix_group(G, 1));
  auto order = *A.order_factors;
  for (int k = 1; k < c; ++k) {
    PcGroup Qn = prefix_group(G, k + 1);
    Level lv{p_cover(A.group()), AutGroup(), {}};
    std::vector<std::vector<Row>> mats;
    for (const auto& g : A.generators()) mats.push_back(multiplicator_action(lv.C, A, g));
    lv.orbit = orbit_stabilizer(lv.C, A, mats, layer_kernel(lv.C, Qn), limit);
    if (lv.orbit.truncated) return false;
    lv.A = std::move(A);
    if (visit && !visit(lv)) return false;
    A = lift_automorphisms(lv.A, lv.orbit.stab, Qn);
    add_factors(order, (long long)lv.orbit.points.size(), -1);
    order[p] += d * (Qn.n() - lv.C.base.n());
  }
  A.order_factors = order;
  out = std::move(A);
  return true;
}

}  // namespace

OrbitResult subspace_orbits(const PCover& C, const AutGroup& A, const std::vector<std::vector<Row>>& subs) {
  const int p = C.base.p();
  std::vector<std::vector<Row>> mats;
  for (const auto& g : A.generators()) mats.push_back(multiplicator_action(C, A, g));
  std::map<std::vector<Row>, int> seen;
  std::vector<std::vector<Row>> canon;
  for (const auto& U : subs) {
    canon.push_back(canonical_span(p, U));
    seen.emplace(canon.back(), -1);
  }
  OrbitResult res;
  for (const auto& U : canon) {
    if (seen[U] >= 0) continue;
    OrbitData o = orbit_stabilizer(C, A, mats, U);
    const int id = int(res.reps.size());
    for (const auto& W : o.points) {
      auto it = seen.find(W);
      if (it == seen.end()) throw GroupError("subspace set not closed under automorphisms");
      it->second = id;
    }
    res.reps.push_back(U);
    res.sizes.push_back((long long)o.points.size());
    res.stabilizers.push_back(std::move(o.stab));
  }
  return res;
}

AutGroup lift_automorphisms(const AutGroup& A, const std::vector<Automorphism>& stab, const PcGroup& D) {
  const PcGroup& G = A.group();
  const int d = G.weight_prefix(1), lim = G.n();
  if (D.weight_prefix(G.pclass()) != lim || D.weight_prefix(1) != d)
    throw GroupError("lift_automorphisms: D is not an immediate descendant of the base group");
  std::vector<Exps> w1;
  for (int i = 0; i < d; ++i) w1.push_back(D.gen(i));
  auto phi = extend_images(G, D, w1, lim);
  AutGroup B(D);
  for (const auto& s : stab) {
    std::vector<Exps> img;
    for (int i = 0; i < d; ++i) img.push_back(map_element(D, phi, s.fwd[i], lim));
    B.add(B.make(img));
  }
  for (int i = 0; i < d; ++i)
    for (int t = lim; t < D.n(); ++t) {
      auto img = w1;
      img[i] = D.mul(D.gen(i), D.gen(t));
      B.add(B.make(img));
    }
  return B;
}

AutGroup automorphism_group(const PcGroup& G) {
  AutGroup A;
  tower(G, A, -1, nullptr);
  return A;
}

std::vector<Descendant> descendants_of(const PCover& C, const AutGroup& A, int s) {
  std::vector<Descendant> out;
  if (s < 1 || s > C.nu) return out;
  auto orb = subspace_orbits(C, A, allowable_subgroups(C, s));
  std::vector<std::pair<std::string, Descendant>> keyed;
  for (size_t k = 0; k < orb.reps.size(); ++k) {
    PcGroup D = standard_form(descendant_of(C, orb.reps[k]));
    AutGroup B = lift_automorphisms(A, orb.stabilizers[k], D);
    if (A.order_factors) {
      auto f = *A.order_factors;
      add_factors(f, orb.sizes[k], -1);
      f[C.base.p()] += C.d * s;
      B.order_factors = f;
    }
    std::string key = fingerprint(D) + "|" + serialize(D);
    keyed.push_back({key, {std::move(D), std::move(B), orb.sizes[k]}});
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, d] : keyed) out.push_back(std::move(d));
  return out;
}

Descendants descendants(const PcGroup& G, int s) {
  Descendants out;
  PCover C = p_cover(G);
  if (s < 1 || s > C.nu) {
    out.step_exceeds_nucleus = s > C.nu;
    return out;
  }
  out.candidates = int(allowable_subgroups(C, s).size());
  for (auto& d : descendants_of(C, automorphism_group(C.base), s)) {
    out.groups.push_back(std::move(d.group));
    out.orbit_sizes.push_back(d.orbit);
  }
  return out;
}

SearchResult isomorphism(const PcGroup& G0, const PcGroup& H0, long long budget) {
  if (G0.p() != H0.p()) throw GroupError("prime-mismatch");
  const PcGroup G = standard_form(G0), H = standard_form(H0);
  SearchResult res;
  if (G.n() != H.n() || G.weights != H.weights) return res;
  const int d = G.weight_prefix(1), p = G.p();
  std::vector<Exps> phi;  // images of the weight-1 generators of G / P_k in H / P_k
  for (int i = 0; i < d; ++i) phi.push_back(prefix_group(H, 1).gen(i));
  int k = 1;
  bool mismatch = false;
  AutGroup dummy;
  bool done = tower(H, dummy, budget, [&](Level& lv) {
    const PcGroup& Hk = lv.C.base;
    PcGroup Gk = prefix_group(G, k), Gn = prefix_group(G, k + 1), Hn = prefix_group(H, k + 1);
    PCover CG = p_cover(Gk);
    if (CG.mu != lv.C.mu) {
      mismatch = true;
      return false;
    }
    res.nodes += (long long)lv.orbit.points.size();
    const int N = lv.C.cover.n();
    std::vector<Exps> w1;
    for (const auto& x : phi) {
      Exps v(N, 0);
      std::copy(x.begin(), x.end(), v.begin());
      w1.push_back(v);
    }
    auto full = extend_images(Gk, lv.C.cover, w1, N);
    std::vector<Row> M;
    for (const auto& t : tail_images(CG, lv.C.cover, full, N)) M.push_back(coords_from(t, Hk.n(), N, "multiplicator"));
    auto W = act(p, layer_kernel(CG, Gn), M);
    auto it = lv.orbit.idx.find(W);
    if (it == lv.orbit.idx.end()) {
      mismatch = true;
      return false;
    }
    const Automorphism alpha = lv.A.inverse(lv.orbit.trans[it->second]);
    std::vector<Exps> hw1;
    for (int i = 0; i < d; ++i) hw1.push_back(Hn.gen(i));
    auto psi = extend_images(Hk, Hn, hw1, Hk.n());
    for (auto& x : phi) x = map_element(Hn, psi, lv.A.apply(alpha, x), Hk.n());
    ++k;
    return true;
  });
  if (mismatch) return res;
  if (!done) {
    res.verdict = Verdict::undetermined;
    return res;
  }
  auto full = extend_images(G, H, phi, H.n());
  for (int j = 0; j < G.n(); ++j) {
    bool ok = H.pow(full[j], p) == map_element(H, full, G.power(j), H.n());
    for (int i = 0; i < j && ok; ++i) ok = H.comm(full[j], full[i]) == map_element(H, full, G.comm_rel(j, i), H.n());
    if (!ok) throw GroupError("isomorphism construction failed a relation");
  }
  res.verdict = Verdict::yes;
  res.images = phi;
  return res;
}

Verdict is_isomorphic(const PcGroup& G, const PcGroup& H, long long budget) {
  if (G.p() != H.p()) throw GroupError("prime-mismatch");
  if (G.n() != H.n()) return Verdict::no;
  if (fingerprint(G) != fingerprint(H)) return Verdict::no;
  return isomorphism(G, H, budget).verdict;
}

bool AutGroup::gl_contains(const std::vector<Row>& m) const {
  if (!gl_complete_) throw GroupError("image on G/Phi not enumerated for this rank");
  Row k;
  for (const auto& r : m) k.insert(k.end(), r.begin(), r.end());
  return glreps_.count(k) > 0;
}

}  // namespace ptree
