#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "ptree/artin.hpp"
#include "ptree/catalog.hpp"
#include "ptree/present.hpp"

using namespace ptree;

namespace {

struct Counts {
  int total = 0, fixed = 0, occ = 0, rep = 0;
};

Counts count_digits(const std::vector<int>& k) {
  Counts c;
  std::vector<int> hist(k.size() + 1, 0);
  for (size_t i = 0; i < k.size(); ++i) {
    hist[k[i]]++;
    if (k[i] == 0) c.total++;
    if (k[i] == int(i) + 1) c.fixed++;
  }
  for (size_t d = 0; d < hist.size(); ++d) {
    if (hist[d]) c.occ++;
    if (d && hist[d] > c.rep) c.rep = hist[d];
  }
  return c;
}

// transfer to the subgroup M = <a, G'> computed from a right transversal
// {1, b, b^2}: the kernel as a set of elements
std::vector<Exps> brute_transfer_kernel(const PcGroup& G, const Exps& a, const Exps& b) {
  Subgroup DG = derived_subgroup(G);
  auto mg = DG.gens;
  mg.push_back(a);
  Subgroup M = closure(G, mg);
  Subgroup DM = derived_of(G, M);
  std::vector<Exps> T{G.id(), b, G.mul(b, b)};
  auto rep = [&](const Exps& x) {
    for (int k = 0; k < 3; ++k)
      if (contains(G, M, G.mul(x, G.inv(T[k])))) return k;
    throw std::logic_error("no coset");
  };
  std::vector<Exps> ker;
  for (const auto& g : oracle::all_elements(G)) {
    Exps v = G.id();
    for (int k = 0; k < 3; ++k) {
      Exps tg = G.mul(T[k], g);
      v = G.mul(v, G.mul(tg, G.inv(T[rep(tg)])));
    }
    if (contains(G, DM, v)) ker.push_back(g);
  }
  return ker;
}

std::vector<PcGroup> pp_groups() {
  std::vector<PcGroup> out{PcGroup(3, 2), standard_form(small::extraspecial27()), standard_form(small::wreath())};
  for (int s : {1, -1})
    for (int c = 3; c <= 5; ++c) out.push_back(mainline_group(s, 2, c));
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}})
    out.push_back(standard_form(coclass2_group(5, a, b)));
  out.push_back(cover_group(1, 0, 5));
  out.push_back(cover_group(0, -1, 5));
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("artin");

TEST_CASE("transfers of (3,3) have total kernels") {
  PcGroup G(3, 2);
  for (int i = 1; i <= 4; ++i) CHECK(transfer(G, i).kernel.logorder() == 2);
  auto a = artin_pattern(G);
  CHECK(a.kappa == std::vector<int>{0, 0, 0, 0});
  CHECK(a.nTotal == 4);
}

TEST_CASE("transfer kernels agree with the transversal definition") {
  for (const auto& G : pp_groups()) {
    if (G.n() > 7) continue;
    Exps x = G.gen(0), y = G.gen(1);
    std::vector<Exps> A{y}, B{x};
    for (int e = 0; e < 3; ++e) {
      A.push_back(G.mul(x, G.pow(y, e)));
      B.push_back(y);
    }
    Subgroup DG = derived_subgroup(G);
    for (int i = 1; i <= 4; ++i) {
      Transfer T = transfer(G, i);
      auto ker = brute_transfer_kernel(G, A[i - 1], B[i - 1]);
      CHECK(oracle::ipow(3, T.kernel.logorder()) == ker.size());
      for (const auto& g : ker) CHECK(contains(G, T.kernel, g));
      CHECK(is_subgroup_of(G, DG, T.kernel));
    }
  }
}

TEST_CASE("transfer images define homomorphisms on G/G'") {
  for (const auto& G : pp_groups()) {
    Exps x = G.gen(0), y = G.gen(1);
    std::vector<Exps> A{y}, B{x};
    for (int e = 0; e < 3; ++e) {
      A.push_back(G.mul(x, G.pow(y, e)));
      B.push_back(y);
    }
    Subgroup DG = derived_subgroup(G);
    for (int i = 0; i < 4; ++i) {
      auto mg = DG.gens;
      mg.push_back(A[i]);
      Subgroup M = closure(G, mg);
      Subgroup DM = derived_of(G, M);
      Exps ta = G.mul(G.pow(G.mul(A[i], G.inv(B[i])), 3), G.pow(B[i], 3));
      Exps tb = G.pow(B[i], 3);
      // both images lie in M and have order dividing 3 modulo M'
      CHECK(contains(G, M, ta));
      CHECK(contains(G, M, tb));
      CHECK(contains(G, DM, G.pow(ta, 3)));
      CHECK(contains(G, DM, G.pow(tb, 3)));
    }
  }
}

TEST_CASE("root patterns") {
  auto a8 = artin_pattern(mainline_group(1, 2, 3));
  CHECK(a8.nTotal == 1);
  CHECK(a8.nFixed == 2);
  CHECK(classify_tkt(a8, RootSide::r8) == "c.21");
  auto k8 = a8.kappa;
  std::sort(k8.begin(), k8.end());
  CHECK(k8 == std::vector<int>{0, 1, 2, 3});
  CHECK(a8.tau[0] == std::vector<int>{2, 1});

  auto a6 = artin_pattern(mainline_group(-1, 2, 3));
  CHECK(a6.nTotal == 1);
  CHECK(a6.nFixed == 0);
  CHECK(classify_tkt(a6, RootSide::r6) == "c.18");
  auto k6 = a6.kappa;
  std::sort(k6.begin(), k6.end());
  // (0122) up to relabeling: one total kernel and one digit repeated twice
  auto c = count_digits(a6.kappa);
  CHECK(k6[0] == 0);
  CHECK(c.rep == 2);
  CHECK(c.occ == 3);
}

TEST_CASE("counters of literal digit strings") {
  ArtinPattern a;
  a.kappa = {2, 1, 2, 2};
  recount(a);
  CHECK(a.nTotal == 0);
  CHECK(a.repetitions == 3);
  CHECK(a.nFixed == 0);
  CHECK(a.occupation == 2);
  CHECK(classify_tkt(a, RootSide::r6) == "H.4");
  a.kappa = {4, 2, 3, 1};
  recount(a);
  CHECK(a.nFixed == 2);
  CHECK(a.occupation == 4);
  CHECK(classify_tkt(a, RootSide::r8) == "G.16");
  a.kappa = {1, 2, 3, 1};
  recount(a);
  CHECK(classify_tkt(a, RootSide::r8) == "E.8");
  a.kappa = {2, 2, 3, 1};
  recount(a);
  CHECK(classify_tkt(a, RootSide::r8) == "E.9");
  a.kappa = {0, 1, 2, 2};
  recount(a);
  CHECK(classify_tkt(a, RootSide::r6) == "c.18");
  a.kappa = {1, 1, 2, 2};
  recount(a);
  CHECK(classify_tkt(a, RootSide::r6) == "E.6");
  a.kappa = {3, 1, 2, 2};
  recount(a);
  CHECK(classify_tkt(a, RootSide::r6) == "E.14");
  CHECK(classify_tkt(a, RootSide::r8) == "unclassified");
}

TEST_CASE("stored counters are recomputable from the digits") {
  for (const auto& G : pp_groups()) {
    auto a = artin_pattern(G);
    auto c = count_digits(a.kappa);
    CHECK(a.nTotal == c.total);
    CHECK(a.nFixed == c.fixed);
    CHECK(a.occupation == c.occ);
    CHECK(a.repetitions == c.rep);
    auto b = a;
    recount(b);
    CHECK(b.intersection == a.intersection);
  }
}

TEST_CASE("relabeling the maximal subgroups") {
  std::mt19937 rng(11);
  auto groups = pp_groups();
  std::vector<ArtinPattern> base;
  for (const auto& G : groups) base.push_back(artin_pattern(G));
  for (int trial = 0; trial < 100; ++trial) {
    const size_t gi = trial % groups.size();
    std::vector<int> perm(4);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto a = artin_pattern(groups[gi], &perm);
    const auto& o = base[gi];
    CHECK(a.nTotal == o.nTotal);
    CHECK(a.nFixed == o.nFixed);
    CHECK(a.occupation == o.occupation);
    CHECK(a.repetitions == o.repetitions);
    CHECK(a.tau_sorted() == o.tau_sorted());
    // the digits are the relabeled originals
    std::vector<int> where(4);
    for (int k = 0; k < 4; ++k) where[perm[k]] = k;
    for (int k = 0; k < 4; ++k) {
      int d = o.kappa[perm[k]];
      CHECK(a.kappa[k] == (d == 0 ? 0 : where[d - 1] + 1));
    }
  }
}

TEST_CASE("coclass-2 presentations against the type table") {
  int cases = 0;
  for (int c = 5; c <= 7; ++c)
    for (const auto& e : coclass2_table()) {
      auto a = artin_pattern(coclass2_group(c, e.alpha, e.beta));
      CHECK_MESSAGE(classify_tkt(a, RootSide::r6) == e.type, "c=", c, " a=", e.alpha, " b=", e.beta);
      ++cases;
    }
  CHECK(cases == 18);
}

TEST_CASE("the pattern factors through the metabelianization") {
  for (auto [e, k, c] : std::vector<std::array<int, 3>>{{1, 0, 5}, {1, -1, 5}, {0, -1, 5}, {1, 0, 6}, {1, 1, 7}}) {
    PcGroup Q = cover_group(e, k, c);
    PcGroup M = metabelianization(Q);
    CHECK(M.n() < Q.n());
    auto a = artin_pattern(Q), b = artin_pattern(M);
    CHECK(a.kappa == b.kappa);
    CHECK(a.tau == b.tau);
  }
}

TEST_CASE("sigma groups") {
  CHECK(is_sigma(PcGroup(3, 2)) == Verdict::yes);
  CHECK(is_sigma(PcGroup(3, 3)) == Verdict::yes);
  CHECK(is_schur_sigma(PcGroup(3, 2)) == Verdict::no);
  CHECK(is_schur_sigma(mainline_group(1, 2, 3)) == Verdict::no);
  // odd class: Schur sigma, even class: no sigma automorphism
  for (int e : {0, 1}) {
    PcGroup S = cover_group(e, 0, 5);
    CHECK(is_sigma(S) == Verdict::yes);
    CHECK(is_schur_sigma(S) == Verdict::yes);
    PcGroup G6 = metabelianization(cover_group(e, 0, 6));
    CHECK(is_sigma(G6) == Verdict::no);
  }
  // the GL-image test agrees with a direct search for an inverting automorphism
  for (const auto& G0 : pp_groups()) {
    if (G0.n() > 8) continue;
    const PcGroup G = standard_form(G0);
    std::vector<std::vector<Exps>> level0{{G.gen(0, 2), G.gen(1, 2)}};
    auto r = find_isomorphism(G, G, 1000000, &level0);
    CHECK(r.verdict != Verdict::undetermined);
    CHECK(is_sigma(G) == r.verdict);
  }
}

TEST_CASE("relabeling orbits of the digit strings") {
  CHECK(kappa_orbit_type({2, 2, 3, 1}) == "E.9");
  CHECK(kappa_orbit_type({3, 2, 3, 1}) == "E.9");
  CHECK(kappa_orbit_type({4, 1, 2, 2}) == "E.14");
  CHECK(kappa_orbit_type({0, 0, 0, 0}).empty());
  CHECK(kappa_orbit_type({2, 2, 4, 1}).empty());
  std::mt19937 rng(4);
  for (const auto& G : pp_groups()) {
    auto a = artin_pattern(G);
    const std::string t = kappa_orbit_type(a.kappa);
    for (RootSide side : {RootSide::r6, RootSide::r8}) {
      std::string c = classify_tkt(a, side);
      if (c != "unclassified" && !t.empty()) CHECK(c == t);
    }
    std::vector<int> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(kappa_orbit_type(artin_pattern(G, &perm).kappa) == t);
  }
  for (int c = 5; c <= 7; ++c)
    for (const auto& e : coclass2_table()) CHECK(kappa_orbit_type(artin_pattern(coclass2_group(c, e.alpha, e.beta)).kappa) == e.type);
}

TEST_CASE("pattern text form") {
  auto a = artin_pattern(mainline_group(1, 2, 3));
  a.classification = classify_tkt(a, RootSide::r8);
  auto s = format_pattern(a);
  CHECK(s.find("[N=1,F=2,") != std::string::npos);
  CHECK(s.find("type=c.21") != std::string::npos);
  CHECK(s.rfind("κ=", 0) == 0);
}

TEST_CASE("non-(p,p) abelianization is rejected") {
  CHECK_THROWS_AS(artin_pattern(small::c9xc3()), GroupError);
  CHECK_THROWS_AS(transfer(PcGroup(3, 3), 1), GroupError);
}

TEST_SUITE_END();
