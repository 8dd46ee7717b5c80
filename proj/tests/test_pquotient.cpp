#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "ptree/present.hpp"
#include "ptree/autgroup.hpp"
#include "ptree/pquotient.hpp"
#include "ptree/subgroup.hpp"
#include "ptree/isom.hpp"

using namespace ptree;

namespace {

// the pc presentation of G read as an abstract presentation
FpGroup as_fp(const PcGroup& G) {
  FpGroup F;
  for (int i = 0; i < G.n(); ++i) F.gens.push_back("g" + std::to_string(i));
  auto word = [&](const Exps& v) {
    Word w;
    for (int i = 0; i < G.n(); ++i) w = w * power(Word::generator(i), v[i]);
    return w;
  };
  for (int j = 0; j < G.n(); ++j) {
    F.relators.push_back(power(Word::generator(j), G.p()) * inverse(word(G.power(j))));
    for (int i = 0; i < j; ++i)
      F.relators.push_back(commutator(Word::generator(j), Word::generator(i)) * inverse(word(G.comm_rel(j, i))));
  }
  return F;
}

int order_of_image(const oracle::Table& T, const std::vector<int>& gens) {
  return int(T.generate(std::set<int>(gens.begin(), gens.end())).size());
}

}  // namespace

TEST_SUITE_BEGIN("pquotient");

TEST_CASE("text form") {
  auto F = parse_fp_group("a, t  # two generators\n(a*t)^3 = a^3\n[[t,a],t] = a^-3\n(t,a,t)^a\n");
  REQUIRE(F.gens.size() == 2);
  REQUIRE(F.relators.size() == 3);
  CHECK(format_word(F, F.relators[2]) == "[t,a,t]^a");
  auto back = parse_fp_group(format_fp_group(F));
  REQUIRE(back.relators.size() == 3);
  // same values in a group where the generators act nontrivially
  PcGroup W = small::wreath();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Exps> img{oracle::random_element(W, rng), oracle::random_element(W, rng)};
    for (size_t k = 0; k < 3; ++k)
      CHECK(evaluate(W, img, F.relators[k]) == evaluate(W, img, back.relators[k]));
  }
  CHECK_THROWS_AS(parse_fp_group("a\nb^2"), GroupError);
  CHECK_THROWS_AS(parse_fp_group("a\n(a"), GroupError);
  CHECK(parse_word(F, "a*a^-1").kind == Word::one);
}

TEST_CASE("commutator and conjugate conventions") {
  FpGroup F{{"a", "b"}, {}};
  PcGroup W = small::wreath();
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Exps> img{oracle::random_element(W, rng), oracle::random_element(W, rng)};
    Exps a = img[0], b = img[1];
    Exps c = W.mul(W.mul(W.inv(a), W.inv(b)), W.mul(a, b));
    CHECK(evaluate(W, img, parse_word(F, "(a,b)")) == c);
    CHECK(evaluate(W, img, parse_word(F, "[a,b,b]")) == W.comm(c, b));
    CHECK(evaluate(W, img, parse_word(F, "a^b")) == W.mul(W.mul(W.inv(b), a), b));
    CHECK(evaluate(W, img, parse_word(F, "a^100000")) == W.pow(a, 100000 % 9));
  }
}

TEST_CASE("free groups") {
  FpGroup F2{{"a", "b"}, {}};
  auto q1 = p_quotient(F2, 3, 1);
  CHECK(q1.quotient.n() == 2);
  CHECK(abelian_invariants(q1.quotient) == std::vector<int>{1, 1});
  // d + d(d-1)/2 + d generators in the second layer of the free group
  CHECK(p_quotient(F2, 3, 2).quotient.n() == 5);
  FpGroup F0{{"a"}, {parse_word(FpGroup{{"a"}, {}}, "a")}};
  auto triv = p_quotient(F0, 3, 3);
  CHECK(triv.quotient.n() == 0);
  CHECK(triv.achieved_class == 0);
}

TEST_CASE("pc presentations are recovered") {
  for (const auto& [name, G] : small::catalog()) {
    CAPTURE(name);
    auto F = as_fp(G);
    auto q = p_quotient(F, 3, 10);
    CHECK(q.relators_checked);
    CHECK(q.quotient.n() == G.n());
    CHECK(q.achieved_class == standard_form(G).pclass());
    CHECK(is_isomorphic(q.quotient, G) == Verdict::yes);
  }
}

TEST_CASE("universal property against small targets") {
  // any assignment satisfying the relators in a group of small class
  // generates an image no larger than the p-quotient
  FpGroup F = parse_fp_group("a, b\na^3\nb^3\n(b,a,a)");
  for (const auto& [name, T0] : small::catalog()) {
    if (T0.n() > 4) continue;
    CAPTURE(name);
    PcGroup T = standard_form(T0);
    oracle::Table tab(T);
    const int c = T.pclass();
    auto q = p_quotient(F, 3, c);
    size_t best = 0;
    for (size_t x = 0; x < tab.elems.size(); ++x)
      for (size_t y = 0; y < tab.elems.size(); ++y) {
        std::vector<Exps> img{tab.elems[x], tab.elems[y]};
        bool ok = true;
        for (const auto& r : F.relators) ok = ok && T.is_id(evaluate(T, img, r));
        if (ok) best = std::max(best, size_t(order_of_image(tab, {int(x), int(y)})));
      }
    CHECK(best <= oracle::ipow(3, q.quotient.n()));
  }
}

TEST_CASE("class growth and functoriality") {
  auto F = parse_fp_group("a, t\n(a*t)^3 = a^3\n[t,a,t] = a^3\na^9");
  int prev = 0;
  for (int c = 1; c <= 6; ++c) {
    CAPTURE(c);
    auto q = p_quotient(F, 3, c);
    CHECK(q.achieved_class <= c);
    CHECK(q.quotient.n() >= prev);
    prev = q.quotient.n();
    if (c >= 2) {
      auto lower = p_quotient(F, 3, c - 1);
      auto P = pcentral_series(q.quotient);
      if (c - 1 < int(P.size())) {
        auto top = quotient(q.quotient, P[c - 1]);
        CHECK(is_isomorphic(top.group, lower.quotient) == Verdict::yes);
      }
    }
  }
  CHECK(p_quotient(F, 3, 3).quotient.n() == 5);
}

TEST_SUITE_END();
