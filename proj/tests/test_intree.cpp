#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "ptree/intree.hpp"

using namespace ptree;

namespace {

Vertex V(int weight, std::string tag = "", std::string key = "") {
  Vertex v;
  v.weight = weight;
  v.tag = std::move(tag);
  v.key = std::move(key);
  return v;
}

// root r; mainline r -1-> m1 -1-> m2 -1-> m3; r -2-> s; m1 -1-> a, m1 -1-> b;
// m2 -1-> c; s -1-> s1
struct Sample {
  Tree t;
  int r, m1, m2, m3, s, a, b, c, s1;
  Sample() {
    r = t.add_root(V(2, "c"), "R");
    m1 = t.add_child(r, 1, V(1, "c", "m"));
    s = t.add_child(r, 2, V(1, "c", "s"));
    m2 = t.add_child(m1, 1, V(1, "c", "m"));
    a = t.add_child(m1, 1, V(0, "E", "x"));
    b = t.add_child(m1, 1, V(1, "E", "y"));
    m3 = t.add_child(m2, 1, V(1, "c", "m"));
    c = t.add_child(m2, 1, V(0, "E", "x"));
    s1 = t.add_child(s, 1, V(0, "E", "x"));
  }
};

struct Shape {
  std::vector<int> parent, step, weight;
  std::vector<std::string> tag;
};

Shape random_shape(std::mt19937& rng, int n) {
  Shape s;
  for (int i = 0; i < n; ++i) {
    s.parent.push_back(i ? int(rng() % i) : -1);
    s.step.push_back(1 + int(rng() % 2));
    s.weight.push_back(int(rng() % 2));
    s.tag.push_back(std::string(1, char('a' + rng() % 2)));
  }
  return s;
}

// the same shape with vertices renumbered (parents still come first)
Shape shuffled(const Shape& s, std::mt19937& rng) {
  const int n = int(s.parent.size());
  std::vector<int> depth(n, 0), order(n);
  for (int i = 1; i < n; ++i) depth[i] = depth[s.parent[i]] + 1;
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin() + 1, order.end(), rng);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return depth[x] < depth[y]; });
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[order[k]] = k;
  Shape t;
  for (int k = 0; k < n; ++k) {
    int i = order[k];
    t.parent.push_back(i ? pos[s.parent[i]] : -1);
    t.step.push_back(s.step[i]);
    t.weight.push_back(s.weight[i]);
    t.tag.push_back(s.tag[i]);
  }
  return t;
}

Tree build(const Shape& s) {
  Tree t;
  std::vector<int> id(s.parent.size());
  for (size_t i = 0; i < s.parent.size(); ++i) {
    Vertex v = V(1, s.tag[i]);
    if (i == 0) {
      id[i] = t.add_root(v);
    } else {
      id[i] = t.add_child(id[s.parent[i]], s.step[i], v);
    }
  }
  // weights are set afterwards so that any vertex may have children
  for (size_t i = 0; i < s.parent.size(); ++i) t.vertex(id[i]).weight = s.weight[i];
  return t;
}

bool brute_isomorphic(const Shape& x, const Shape& y) {
  const int n = int(x.parent.size());
  if (int(y.parent.size()) != n) return false;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[0] != 0) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const int j = perm[i];
      ok = x.weight[i] == y.weight[j] && x.tag[i] == y.tag[j];
      if (ok && i) ok = perm[x.parent[i]] == y.parent[j] && x.step[i] == y.step[j];
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

BranchGraph single(std::vector<std::string> tags) {
  BranchGraph b;
  b.root = b.tree.add_root(V(1, tags[0]));
  for (size_t k = 1; k < tags.size(); ++k) b.tree.add_child(b.root, 1, V(0, tags[k]));
  return b;
}

}  // namespace

TEST_SUITE_BEGIN("intree");

TEST_CASE("parents and root paths") {
  Sample S;
  Tree& t = S.t;
  CHECK(t.parent(S.m1) == S.r);
  CHECK(t.root_path(S.r) == std::vector<int>{S.r});
  CHECK(t.root_path(S.m2) == std::vector<int>{S.m2, S.m1, S.r});
  CHECK(t.root_path(S.c).back() == S.r);
  for (int v : t.ids())
    if (v != t.root()) CHECK(t.root_path(v)[1] == t.parent(v));
  CHECK_THROWS_AS(t.parent(S.r), TreeError);
  try {
    t.parent(S.r);
  } catch (const TreeError& e) {
    CHECK(e.code == "root-has-no-parent");
  }
  try {
    t.root_path(99);
  } catch (const TreeError& e) {
    CHECK(e.code == "unknown-vertex");
  }
}

TEST_CASE("forks and distances") {
  Sample S;
  Tree& t = S.t;
  CHECK(t.fork(S.a, S.a) == S.a);
  CHECK(t.fork(S.c, S.m1) == S.m1);
  CHECK(t.fork(S.c, S.s1) == S.r);
  CHECK(t.distance(S.a, S.a) == 0);
  CHECK(t.distance(S.a, S.b) == 2);
  CHECK(t.weighted_distance(S.a, S.b) == 2);
  CHECK(t.distance(S.c, S.s1) == 5);
  CHECK(t.weighted_distance(S.c, S.s1) == 6);
  for (int u : t.ids())
    for (int v : t.ids()) {
      CHECK(t.distance(u, v) == t.distance(v, u));
      CHECK(t.weighted_distance(u, v) == t.weighted_distance(v, u));
      CHECK(t.weighted_distance(u, v) >= t.distance(u, v));
      CHECK((t.distance(u, v) == 0) == (u == v));
      // equality exactly when both fork paths use step size 1 only
      int f = t.fork(u, v);
      bool ones = true;
      for (int x : {u, v})
        for (; x != f; x = t.parent(x)) ones = ones && t.step(x) == 1;
      CHECK((t.weighted_distance(u, v) == t.distance(u, v)) == ones);
    }
}

TEST_CASE("minimal trees and branches") {
  Sample S;
  Tree& t = S.t;
  CHECK(t.minimal_tree(S.a).size() == 1);
  Tree T1 = t.minimal_tree(S.r);
  CHECK_FALSE(T1.contains(S.s));
  CHECK_FALSE(T1.contains(S.s1));
  CHECK(T1.size() == 7);
  CHECK(t.subtree(S.r).size() == t.size());

  std::vector<int> ml{S.r, S.m1, S.m2, S.m3};
  std::vector<BranchGraph> bs;
  for (int i = 0; i < 3; ++i) bs.push_back(branch(t, ml, i));
  CHECK(bs[0].tree.size() == 1);
  CHECK(bs[1].tree.size() == 3);
  CHECK(bs[2].tree.size() == 2);
  // the branches and the last minimal tree partition T_1(v_0)
  size_t total = t.minimal_tree(S.m3).size();
  for (const auto& b : bs) total += b.tree.size();
  CHECK(total == T1.size());
  CHECK_THROWS_AS(branch(t, ml, 3), TreeError);
  CHECK_THROWS_AS(branch(t, {S.r, S.s}, 0), TreeError);
}

TEST_CASE("multifurcation counters") {
  Sample S;
  Tree& t = S.t;
  auto f = t.multifurcation(S.r);
  CHECK(f.N[1] == 1);
  CHECK(f.N[2] == 1);
  CHECK(f.C[1] == 1);
  auto g = t.multifurcation(S.m1);
  CHECK(g.N[1] == 3);
  CHECK(g.C[1] == 2);
  CHECK(t.multifurcation(S.a).N.empty());
  t.vertex(S.m3).expandable = true;
  CHECK_THROWS_AS(t.multifurcation(S.m3), TreeError);
  size_t vsum = 0, esum = 0;
  for (auto [w, n] : t.weight_partition()) vsum += n;
  for (auto [s, n] : t.step_partition()) esum += n;
  CHECK(vsum == t.size());
  CHECK(esum == t.edges().size());
  CHECK(esum + 1 == t.size());
}

TEST_CASE("child labels") {
  Tree t;
  int r = t.add_root(V(2), "R");
  int x = t.add_child(r, 2, V(1, "", "b"));
  int y = t.add_child(r, 2, V(1, "", "a"));
  int z = t.add_child(r, 1, V(1, "", "z"));
  int w = t.add_child(z, 1, V(0));
  CHECK(t.child_label(z) == "R-#1;1");
  CHECK(t.child_label(y) == "R-#2;1");
  CHECK(t.child_label(x) == "R-#2;2");
  CHECK(t.child_label(w) == "R-#1;1-#1;1");
  CHECK_THROWS_AS(t.child_label(r), TreeError);
  CHECK_THROWS_AS(t.add_child(w, 1, V(0)), TreeError);
  CHECK_THROWS_AS(t.add_child(r, 0, V(0)), TreeError);
}

TEST_CASE("canonical encoding agrees with brute-force isomorphism") {
  std::mt19937 rng(5);
  int same = 0, differ = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + int(rng() % 8);
    Shape a = random_shape(rng, n);
    Shape b = trial % 2 ? shuffled(a, rng) : random_shape(rng, n);
    Tree ta = build(a), tb = build(b);
    bool iso = brute_isomorphic(a, b);
    CHECK((canonical_encoding(ta, ta.root()) == canonical_encoding(tb, tb.root())) == iso);
    (iso ? same : differ)++;
  }
  CHECK(same > 100);
  CHECK(differ > 50);
}

TEST_CASE("periodicity") {
  auto A = single({"c", "E"}), B = single({"c", "E", "E"}), C = single({"c"});
  CHECK_THROWS_AS(detect_periodicity({A}), TreeError);
  auto p = detect_periodicity({A, A, A, A});
  REQUIRE(p);
  CHECK(p->rho == 0);
  CHECK(p->lambda == 1);
  CHECK(p->periods == 4);
  p = detect_periodicity({A, B, A, B, A, B});
  REQUIRE(p);
  CHECK(p->rho == 0);
  CHECK(p->lambda == 2);
  CHECK(p->periods == 3);
  p = detect_periodicity({C, B, A, B, A, B});
  REQUIRE(p);
  CHECK(p->rho == 1);
  CHECK(p->lambda == 2);
  CHECK(p->periods == 2);
  CHECK_FALSE(detect_periodicity({A, B, C}));
}

TEST_CASE("serialization") {
  Sample S;
  Tree& t = S.t;
  t.vertex(S.b).payload = {{"note", "x"}};
  t.vertex(S.m3).expandable = true;
  auto j = t.to_json();
  Tree u = Tree::from_json(j);
  CHECK(u.to_json() == j);
  CHECK(u.to_dot() == t.to_dot());
  CHECK(u.child_label(S.c) == t.child_label(S.c));
  CHECK(u.vertex(S.m3).expandable);

  Tree point;
  point.add_root(V(0), "P");
  auto dot = point.to_dot();
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(std::count(dot.begin(), dot.end(), '[') == 2);  // node defaults and one vertex
  CHECK(dot.find("->") == std::string::npos);

  auto bad = j;
  bad["edges"].push_back({S.a, S.b, 1});
  CHECK_THROWS_AS(Tree::from_json(bad), TreeError);
  bad = j;
  bad["edges"].erase(bad["edges"].begin());
  CHECK_THROWS_AS(Tree::from_json(bad), TreeError);
}

TEST_SUITE_END();
