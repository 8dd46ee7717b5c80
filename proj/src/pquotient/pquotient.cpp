#include "ptree/pquotient.hpp"

#include "ptree/linalg.hpp"
#include "ptree/pcover.hpp"
#include "ptree/present.hpp"

namespace ptree {

namespace {

void check_relators(const FpGroup& F, const QuotientResult& R) {
  for (const auto& r : F.relators)
    if (!R.quotient.is_id(evaluate(R.quotient, R.images, r)))
      throw GroupError("relator " + format_word(F, r) + " does not vanish in the p-quotient");
}

// element of G given by exponents v, rewritten as a word in gens
Exps rewrite(const PcGroup& H, const std::vector<Exps>& gens, const Exps& v) {
  Exps r = H.id();
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i]) H.mul_into(r, H.pow(gens[i], v[i]), H.n());
  return r;
}

}  // namespace

QuotientResult p_quotient(const FpGroup& F, int p, int c) {
  if (c < 1) throw GroupError("class bound must be at least 1");
  const int r = int(F.gens.size());
  QuotientResult R;

  // class 1: F_p^r modulo the exponent sums of the relators
  Echelon ech(p, r);
  for (const auto& w : F.relators) ech.add(exponent_sums(w, r, p));
  ech.make_reduced();
  std::vector<int> pivrow(r, -1), freeidx(r, -1);
  for (int k = 0; k < ech.rank(); ++k) pivrow[ech.pivots()[k]] = k;
  std::vector<int> defining;  // generators of F mapping onto the weight-1 generators
  for (int g = 0; g < r; ++g)
    if (pivrow[g] < 0) {
      freeidx[g] = int(defining.size());
      defining.push_back(g);
    }
  const int d = int(defining.size());
  PcGroup Q(p, d);
  Q.weights.assign(d, 1);
  Q.defs.assign(d, {});
  Q.standard = true;
  Q.finalize();
  std::vector<Exps> img(r, Q.id());
  for (int g = 0; g < r; ++g) {
    if (pivrow[g] < 0) {
      img[g][freeidx[g]] = 1;
      continue;
    }
    const Row& row = ech.rows()[pivrow[g]];
    for (int f : defining)
      if (row[f]) img[g][freeidx[f]] = mod(-row[f], p);
  }
  int cls = d > 0 ? 1 : 0;

  while (cls > 0 && cls < c) {
    PCover C = p_cover(Q);
    const PcGroup& P = C.cover;
    const int n = Q.n(), N = P.n();
    // one central variable per non-defining generator of F
    std::vector<int> extra(r, -1);
    int x = 0;
    for (int g = 0; g < r; ++g)
      if (pivrow[g] >= 0) extra[g] = x++;
    PcGroup E(p, N + x);
    auto pad = [&](const Exps& v) {
      Exps w(N + x, 0);
      std::copy(v.begin(), v.end(), w.begin());
      return w;
    };
    for (int j = 0; j < N; ++j) {
      E.set_power(j, pad(P.power(j)));
      for (int i = 0; i < j; ++i) E.set_comm(j, i, pad(P.comm_rel(j, i)));
    }
    E.weights = P.weights;
    E.weights.resize(N + x, cls + 1);
    E.finalize();

    std::vector<Exps> eimg(r);
    for (int g = 0; g < r; ++g) {
      if (extra[g] < 0) {
        eimg[g] = E.gen(freeidx[g]);
      } else {
        Exps lift(N + x, 0);
        std::copy(img[g].begin(), img[g].end(), lift.begin());
        eimg[g] = E.mul(lift, E.gen(N + extra[g]));
      }
    }
    std::vector<Exps> kill;
    for (const auto& w : F.relators) {
      Exps v = evaluate(E, eimg, w);
      for (int t = 0; t < n; ++t)
        if (v[t]) throw GroupError("relator " + format_word(F, w) + " survives below the cover");
      if (!E.is_id(v)) kill.push_back(v);
    }
    auto q = quotient(E, closure(E, kill));
    if (q.group.n() == n) break;  // no new generators: the quotient is stable

    std::vector<Exps> dimg(r), w1;
    for (int g = 0; g < r; ++g) dimg[g] = q.image(E, eimg[g]);
    for (int g : defining) w1.push_back(dimg[g]);
    Standardized S = standardize(q.group, &w1);
    for (int g = 0; g < r; ++g) img[g] = rewrite(S.group, S.old_to_new, dimg[g]);
    Q = std::move(S.group);
    ++cls;
  }

  R.quotient = std::move(Q);
  R.images = std::move(img);
  R.achieved_class = cls;
  check_relators(F, R);
  R.relators_checked = true;
  return R;
}

}  // namespace ptree
