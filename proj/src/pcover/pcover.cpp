#include "ptree/pcover.hpp"

#include <algorithm>

#include "ptree/linalg.hpp"
#include "ptree/present.hpp"

namespace ptree {

namespace {

struct Rel {
  Definition::Kind kind;
  int j, i;
};

// tail rows produced by the consistency checks of E restricted to the
// first n generators; tails occupy positions n..n+m-1 of E
std::vector<Row> consistency_rows(const PcGroup& E, int n) {
  const int m = E.n() - n, p = E.p(), L = E.n();
  std::vector<Row> rows;
  auto diff = [&](const Exps& l, const Exps& r) {
    for (int t = 0; t < n; ++t)
      if (l[t] != r[t]) throw GroupError("inconsistent-input");
    Row row(m);
    bool nz = false;
    for (int t = 0; t < m; ++t) {
      row[t] = mod(l[n + t] - r[n + t], p);
      nz = nz || row[t];
    }
    if (nz) rows.push_back(row);
  };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        Exps l = E.gen(k);
        E.collect(l, j, L);
        E.collect(l, i, L);
        Exps r = E.gen(j);
        E.collect(r, i, L);
        Exps rr = E.gen(k);
        E.mul_into(rr, r, L);
        diff(l, rr);
      }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      Exps l = E.power(j);
      E.collect(l, i, L);
      Exps w = E.gen(j);
      E.collect(w, i, L);
      Exps r = E.gen(j, p - 1);
      E.mul_into(r, w, L);
      diff(l, r);
      Exps l2 = E.gen(j);
      E.mul_into(l2, E.power(i), L);
      Exps r2 = E.gen(j);
      for (int t = 0; t < p; ++t) E.collect(r2, i, L);
      diff(l2, r2);
    }
    Exps l = E.power(j);
    E.collect(l, j, L);
    Exps r = E.gen(j);
    E.mul_into(r, E.power(j), L);
    diff(l, r);
  }
  return rows;
}

Exps extend(const Exps& v, int n, const Row& tail) {
  Exps w(n + tail.size(), 0);
  std::copy(v.begin(), v.end(), w.begin());
  std::copy(tail.begin(), tail.end(), w.begin() + n);
  return w;
}

}  // namespace

PCover p_cover(const PcGroup& G) {
  PCover C;
  C.base = standard_form(G);
  const PcGroup& S = C.base;
  const int n = S.n(), p = S.p(), c = S.pclass();
  C.d = S.weight_prefix(1);

  std::vector<char> defpow(n, 0);
  std::vector<char> defcomm(size_t(n) * n, 0);
  for (int g = 0; g < n; ++g) {
    const auto& d = S.defs[g];
    if (d.kind == Definition::power) defpow[d.j] = 1;
    if (d.kind == Definition::comm) defcomm[d.j * n + d.i] = 1;
  }
  std::vector<Rel> rels;
  for (int j = 0; j < n; ++j) {
    if (!defpow[j]) rels.push_back({Definition::power, j, -1});
    for (int i = 0; i < j; ++i)
      if (!defcomm[j * n + i]) rels.push_back({Definition::comm, j, i});
  }
  const int m = int(rels.size());

  PcGroup E(p, n + m);
  for (int j = 0; j < n; ++j) {
    E.set_power(j, extend(S.power(j), n, Row(m, 0)));
    for (int i = 0; i < j; ++i) E.set_comm(j, i, extend(S.comm_rel(j, i), n, Row(m, 0)));
  }
  for (int t = 0; t < m; ++t) {
    const Rel& r = rels[t];
    Row tail(m, 0);
    tail[t] = 1;
    if (r.kind == Definition::power)
      E.set_power(r.j, extend(S.power(r.j), n, tail));
    else
      E.set_comm(r.j, r.i, extend(S.comm_rel(r.j, r.i), n, tail));
  }
  E.finalize();

  Echelon ech(p, m);
  for (const auto& row : consistency_rows(E, n)) ech.add(row);
  ech.make_reduced();
  std::vector<int> pivrow(m, -1);
  for (int k = 0; k < ech.rank(); ++k) pivrow[ech.pivots()[k]] = k;
  std::vector<int> freeidx(m, -1);
  int mu = 0;
  for (int t = 0; t < m; ++t)
    if (pivrow[t] < 0) freeidx[t] = mu++;
  // each tail variable in terms of the free ones
  auto tail_of = [&](int t) {
    Row v(mu, 0);
    if (pivrow[t] < 0) {
      v[freeidx[t]] = 1;
    } else {
      const Row& row = ech.rows()[pivrow[t]];
      for (int f = 0; f < m; ++f)
        if (pivrow[f] < 0 && row[f]) v[freeidx[f]] = mod(-row[f], p);
    }
    return v;
  };

  PcGroup X(p, n + mu);
  for (int j = 0; j < n; ++j) {
    X.set_power(j, extend(S.power(j), n, Row(mu, 0)));
    for (int i = 0; i < j; ++i) X.set_comm(j, i, extend(S.comm_rel(j, i), n, Row(mu, 0)));
  }
  std::vector<Definition> defs = S.defs;
  defs.resize(n + mu);
  for (int t = 0; t < m; ++t) {
    const Rel& r = rels[t];
    Row tv = tail_of(t);
    if (r.kind == Definition::power)
      X.set_power(r.j, extend(S.power(r.j), n, tv));
    else
      X.set_comm(r.j, r.i, extend(S.comm_rel(r.j, r.i), n, tv));
    if (pivrow[t] < 0) defs[n + freeidx[t]] = {r.kind, r.j, r.i};
  }
  X.weights = S.weights;
  X.weights.resize(n + mu, c + 1);
  X.defs = defs;
  X.finalize();
  C.cover = std::move(X);
  C.mu = mu;

  std::vector<Exps> mg;
  for (int t = 0; t < mu; ++t) mg.push_back(C.cover.gen(n + t));
  C.multiplicator = closure(C.cover, mg);
  auto P = pcentral_series(C.cover);
  C.nucleus = c < int(P.size()) ? P[c] : closure(C.cover, {});
  C.nu = C.nucleus.logorder();
  for (const auto& g : C.nucleus.gens) C.nucleus_rows.push_back(Row(g.begin() + n, g.end()));
  return C;
}

int multiplicator_rank(const PcGroup& G) { return p_cover(G).mu; }
int nuclear_rank(const PcGroup& G) { return p_cover(G).nu; }
// d_2 = dim H^2(G, F_p) = dim R / R^p [R, F] = mu
int relation_rank(const PcGroup& G) { return p_cover(G).mu; }

std::vector<std::vector<Row>> allowable_subgroups(const PCover& C, int s) {
  const int mu = C.mu, p = C.cover.p();
  std::vector<std::vector<Row>> out;
  if (s < 1 || s > C.nu) return out;
  // U = ker A for A an s x mu matrix in reduced row echelon form of rank s
  std::vector<int> piv(s);
  for (int t = 0; t < s; ++t) piv[t] = t;
  for (;;) {
    std::vector<std::pair<int, int>> slots;  // free entries (row, col)
    std::vector<char> isp(mu, 0);
    for (int c : piv) isp[c] = 1;
    for (int r = 0; r < s; ++r)
      for (int c = piv[r] + 1; c < mu; ++c)
        if (!isp[c]) slots.push_back({r, c});
    long long total = 1;
    for (size_t t = 0; t < slots.size(); ++t) total *= p;
    std::vector<int> val(slots.size(), 0);
    for (long long code = 0; code < total; ++code) {
      std::vector<Row> A(s, Row(mu, 0));
      for (int r = 0; r < s; ++r) A[r][piv[r]] = 1;
      for (size_t t = 0; t < slots.size(); ++t) A[slots[t].first][slots[t].second] = val[t];
      // A must map the nucleus onto F_p^s
      Echelon img(p, s);
      for (const auto& nrow : C.nucleus_rows) {
        Row v(s, 0);
        for (int r = 0; r < s; ++r) {
          long long acc = 0;
          for (int c = 0; c < mu; ++c) acc += A[r][c] * nrow[c];
          v[r] = mod(acc, p);
        }
        img.add(v);
      }
      if (img.rank() == s) {
        // basis of ker A: one vector per non-pivot column
        std::vector<Row> U;
        for (int f = 0; f < mu; ++f) {
          if (isp[f]) continue;
          Row v(mu, 0);
          v[f] = 1;
          for (int r = 0; r < s; ++r) v[piv[r]] = mod(-A[r][f], p);
          U.push_back(v);
        }
        out.push_back(U);
      }
      for (size_t t = 0; t < val.size(); ++t) {
        if (++val[t] < p) break;
        val[t] = 0;
      }
    }
    int t = s - 1;
    while (t >= 0 && piv[t] == mu - s + t) --t;
    if (t < 0) break;
    ++piv[t];
    for (int u = t + 1; u < s; ++u) piv[u] = piv[u - 1] + 1;
  }
  return out;
}

PcGroup descendant_of(const PCover& C, const std::vector<Row>& U) {
  const int n = C.base.n();
  std::vector<Exps> gens;
  for (const auto& r : U) gens.push_back(extend(C.base.id(), n, r));
  Subgroup N = closure(C.cover, gens);
  auto q = quotient(C.cover, N);
  PcGroup D = std::move(q.group);
  for (size_t k = 0; k < q.kept.size(); ++k) D.defs[k] = C.cover.defs[q.kept[k]];
  return D;
}

}  // namespace ptree
