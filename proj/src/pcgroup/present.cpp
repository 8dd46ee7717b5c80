#include "ptree/present.hpp"

#include <algorithm>

namespace ptree {

LayerCoords::LayerCoords(const PcGroup& G) : G_(&G), P_(pcentral_series(G)) {
  for (int k = 0; k + 1 < int(P_.size()); ++k) {
    const Subgroup& A = P_[k];
    const Subgroup& B = P_[k + 1];
    Subgroup c;
    std::vector<int> pos;
    for (size_t a = 0; a < A.leads.size(); ++a) {
      int l = A.leads[a];
      auto it = std::find(B.leads.begin(), B.leads.end(), l);
      c.leads.push_back(l);
      if (it != B.leads.end()) {
        c.gens.push_back(B.gens[it - B.leads.begin()]);
      } else {
        c.gens.push_back(A.gens[a]);
        pos.push_back(int(a));
      }
    }
    comb_.push_back(std::move(c));
    pos_.push_back(std::move(pos));
  }
}

Row LayerCoords::coords(int k, const Exps& x) const {
  Row r(pos_[k].size(), 0);
  if (G_->is_id(x)) return r;
  auto c = ptree::coords(*G_, comb_[k], x);
  if (c.empty()) throw GroupError("element outside series term");
  for (size_t i = 0; i < pos_[k].size(); ++i) r[i] = c[pos_[k][i]];
  return r;
}

Standardized standardize(const PcGroup& G, const std::vector<Exps>* weight1) {
  const int p = G.p(), n = G.n();
  LayerCoords LC(G);
  const int c = LC.layers();
  std::vector<Exps> h;          // new generators, old coordinates
  std::vector<int> wt;
  std::vector<Definition> df;
  std::vector<std::vector<int>> layer(c);  // indices into h

  auto pick = [&](int k, const std::vector<std::pair<Exps, Definition>>& cand, bool strict) {
    Echelon E(p, LC.dim(k));
    for (const auto& [x, d] : cand) {
      if (E.rank() == LC.dim(k)) break;
      if (E.add(LC.coords(k, x))) {
        layer[k].push_back(int(h.size()));
        h.push_back(x);
        wt.push_back(k + 1);
        df.push_back(d);
      } else if (strict) {
        throw GroupError("weight-1 elements are dependent modulo the Frattini subgroup");
      }
    }
    if (E.rank() != LC.dim(k)) throw GroupError("layer not spanned by definitions");
  };

  if (c > 0) {
    std::vector<std::pair<Exps, Definition>> cand;
    if (weight1) {
      for (auto x : *weight1) cand.push_back({x, {}});
    } else {
      for (int i = 0; i < n; ++i) cand.push_back({G.gen(i), {}});
    }
    pick(0, cand, weight1 != nullptr);
  }
  for (int k = 1; k < c; ++k) {
    std::vector<std::pair<Exps, Definition>> cand;
    for (int a : layer[k - 1]) {
      for (int b : layer[0])
        if (b < a) cand.push_back({G.comm(h[a], h[b]), {Definition::comm, a, b}});
      cand.push_back({G.pow(h[a], p), {Definition::power, a, -1}});
    }
    pick(k, cand, false);
  }
  if (int(h.size()) != n) throw GroupError("standardize: generator count mismatch");

  std::vector<Echelon> ech;
  for (int k = 0; k < c; ++k) {
    Echelon E(p, LC.dim(k));
    for (int i : layer[k]) E.add(LC.coords(k, h[i]));
    ech.push_back(std::move(E));
  }
  auto conv = [&](Exps x) {
    Exps out(n, 0);
    for (int k = 0; k < c; ++k) {
      auto sol = ech[k].solve(LC.coords(k, x));
      Exps y = G.id();
      for (size_t i = 0; i < layer[k].size(); ++i) {
        out[layer[k][i]] = sol[i];
        if (sol[i]) y = G.mul(y, G.pow(h[layer[k][i]], sol[i]));
      }
      x = G.mul(G.inv(y), x);
    }
    if (!G.is_id(x)) throw GroupError("standardize: conversion failed");
    return out;
  };

  Standardized S;
  PcGroup Q(p, n);
  for (int a = 0; a < n; ++a) {
    Q.set_power(a, conv(G.pow(h[a], p)));
    for (int b = 0; b < a; ++b) Q.set_comm(a, b, conv(G.comm(h[a], h[b])));
  }
  Q.weights = wt;
  Q.defs = df;
  Q.standard = true;
  Q.finalize();
  S.group = std::move(Q);
  for (int i = 0; i < n; ++i) S.old_to_new.push_back(conv(G.gen(i)));
  S.new_in_old = h;
  return S;
}

PcGroup standard_form(const PcGroup& G) {
  if (G.standard) return G;
  return standardize(G).group;
}

}  // namespace ptree
