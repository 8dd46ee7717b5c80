#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "ptree/drivers.hpp"
#include "ptree/io.hpp"
#include "ptree/present.hpp"

namespace ptree {

namespace {

bool is_pp(const PcGroup& G) { return abelian_invariants(G) == std::vector<int>{1, 1}; }

bool scaffold(const ArtinPattern& a, RootSide side) { return is_admissible(a, 0, side); }

// runs f(i) for i in [0, n) on a few threads
template <class F>
void parallel_for(int n, int threads, F f) {
  if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

GroupVertex annotate(PcGroup G, AutGroup A, RootSide side) {
  GroupVertex v;
  v.pattern = artin_pattern(G);
  v.pattern.classification = classify_tkt(v.pattern, side);
  v.lo = G.n();
  v.cl = int(lower_central_series(G).size()) - 1;
  v.cc = v.lo - v.cl;
  PCover C = p_cover(G);
  v.nu = C.nu;
  v.mu = C.mu;
  if (A.gl_complete()) {
    const int d = G.weight_prefix(1);
    std::vector<Row> minus(d, Row(d, 0));
    for (int i = 0; i < d; ++i) minus[i][i] = G.p() - 1;
    v.sigma = A.gl_contains(minus) ? Verdict::yes : Verdict::no;
  }
  v.group = std::move(G);
  v.aut = std::move(A);
  return v;
}

GroupVertex annotate(const PcGroup& G0, RootSide side) {
  PcGroup G = standard_form(G0);
  AutGroup A = automorphism_group(G);
  return annotate(std::move(G), std::move(A), side);
}

std::vector<GroupVertex> children_of(const GroupVertex& v, int s, RootSide side) {
  std::vector<GroupVertex> out;
  if (s < 1 || s > v.nu) return out;
  PCover C = p_cover(v.group);
  for (auto& d : descendants_of(C, v.aut, s)) {
    if (!is_pp(d.group)) continue;
    out.push_back(annotate(std::move(d.group), std::move(d.aut), side));
  }
  return out;
}

GroupVertex tree_root(const RootVariant& variant) { return annotate(mainline_group(variant.sign, 2, 3), variant.side); }

nlohmann::json vertex_payload(const GroupVertex& v) {
  return {{"fingerprint", fingerprint(v.group)},
          {"lo", v.lo},
          {"cl", v.cl},
          {"cc", v.cc},
          {"nu", v.nu},
          {"mu", v.mu},
          {"type", v.pattern.classification},
          {"pattern", format_pattern(v.pattern)},
          {"sigma", to_string(v.sigma)},
          {"pc", to_json(v.group)}};
}

Vertex tree_vertex(const GroupVertex& v) {
  Vertex t;
  t.weight = v.nu;
  t.tag = v.pattern.classification;
  t.key = fingerprint(v.group) + "|" + serialize(v.group);
  t.payload = vertex_payload(v);
  return t;
}

int GroupTree::add_root(GroupVertex g, const std::string& name) {
  int id = tree.add_root(tree_vertex(g), name);
  groups.emplace(id, std::move(g));
  return id;
}

int GroupTree::add_child(int parent, int step, GroupVertex g) {
  int id = tree.add_child(parent, step, tree_vertex(g));
  groups.emplace(id, std::move(g));
  return id;
}

const GroupVertex& GroupTree::at(int v) const {
  auto it = groups.find(v);
  if (it == groups.end()) throw DriverError("missing-annotations", "vertex " + std::to_string(v));
  return it->second;
}

bool retained(const GroupVertex& v, RootSide side) {
  if (is_complex_type(v.pattern)) return false;
  return !(scaffold(v.pattern, side) && !v.capable());
}

GroupTree build_tree(const GroupVertex& root, const std::string& name, RootSide side, const TreeOptions& opt) {
  GroupTree t;
  t.side = side;
  std::vector<int> frontier{t.add_root(root, name)};
  while (!frontier.empty()) {
    std::vector<int> todo;
    for (int v : frontier) {
      const GroupVertex& g = t.groups.at(v);
      if (!g.capable()) continue;
      if (g.lo > opt.max_lo) {
        t.tree.vertex(v).expandable = true;
        continue;
      }
      todo.push_back(v);
    }
    // children per vertex and step, computed in parallel and added in order
    std::vector<std::vector<std::pair<int, GroupVertex>>> kids(todo.size());
    parallel_for(int(todo.size()), opt.threads, [&](int i) {
      const GroupVertex& g = t.groups.at(todo[i]);
      for (int s = 1; s <= g.nu; ++s) {
        if (!opt.steps.empty() && !opt.steps.count(s)) continue;
        for (auto& c : children_of(g, s, side))
          if (!opt.pruned || retained(c, side)) kids[i].push_back({s, std::move(c)});
      }
    });
    std::vector<int> next;
    for (size_t i = 0; i < todo.size(); ++i)
      for (auto& [s, c] : kids[i]) next.push_back(t.add_child(todo[i], s, std::move(c)));
    frontier = std::move(next);
  }
  return t;
}

GroupTree build_pruned_tree(const RootVariant& variant, int max_lo, bool pruned) {
  TreeOptions opt;
  opt.max_lo = max_lo;
  opt.pruned = pruned;
  return build_tree(tree_root(variant), variant.root_name, variant.side, opt);
}

namespace {

bool scaffold_tag(const Vertex& v) { return v.tag == "c.18" || v.tag == "c.21"; }

// unique capable scaffold child of v along an edge of step s, or -1
int tree_scaffold_child(const Tree& t, int v, int s) {
  int found = -1;
  for (int c : t.children(v)) {
    if (t.step(c) != s || !scaffold_tag(t.vertex(c)) || t.vertex(c).weight < 1) continue;
    if (found >= 0) throw DriverError("multiple-admissible-children", t.label(v));
    found = c;
  }
  return found;
}

}  // namespace

std::vector<int> tree_mainline(const Tree& t, int v) {
  std::vector<int> out{v};
  for (int c; (c = tree_scaffold_child(t, out.back(), 1)) >= 0;) out.push_back(c);
  return out;
}

std::vector<int> tree_maintrunk(const Tree& t) {
  std::vector<int> out{t.root()};
  for (int s = 1;; s = 3 - s) {
    int c = tree_scaffold_child(t, out.back(), s);
    if (c < 0) break;
    out.push_back(c);
  }
  return out;
}

GroupVertex scaffold_child(const GroupVertex& v, int s, RootSide side) {
  std::optional<GroupVertex> found;
  for (auto& c : children_of(v, s, side)) {
    if (!scaffold(c.pattern, side) || !c.capable()) continue;
    if (found) throw DriverError("multiple-admissible-children", "step " + std::to_string(s));
    found = std::move(c);
  }
  if (!found) throw DriverError("no-admissible-child", "step " + std::to_string(s) + " below order 3^" + std::to_string(v.lo));
  return std::move(*found);
}

GroupVertex mainline_vertex(const RootVariant& variant, int r, int c) {
  if (r < 2 || c < 2 * r - 1) throw DriverError("bad-index", "M_c^(r) needs r >= 2 and c >= 2r-1");
  GroupVertex v = tree_root(variant);
  for (int k = 2; k < r; ++k) v = scaffold_child(scaffold_child(v, 1, variant.side), 2, variant.side);
  for (int k = 2 * r - 1; k < c; ++k) v = scaffold_child(v, 1, variant.side);
  return v;
}

std::vector<ChildCensus> mainline_census(const RootVariant& variant, int c_from, int c_to) {
  std::vector<ChildCensus> out;
  GroupVertex m = mainline_vertex(variant, 2, std::max(3, c_from - 1));
  for (int c = std::max(4, c_from); c <= c_to; ++c) {
    ChildCensus k;
    k.c = c;
    std::optional<GroupVertex> next;
    for (auto& g : children_of(m, 1, variant.side)) {
      const std::string& t = g.pattern.classification;
      k.all[t]++;
      if (g.capable()) k.capable[t]++;
      if (retained(g, variant.side)) {
        k.N1++;
        if (g.capable()) k.C1++;
      }
      if (scaffold(g.pattern, variant.side) && g.capable()) next = std::move(g);
    }
    out.push_back(k);
    if (!next) break;
    m = std::move(*next);
  }
  return out;
}

std::optional<GroupVertex> locate(const RootVariant& variant, const std::string& type, const std::vector<int>& tau1,
                                  int c_max) {
  GroupVertex m = tree_root(variant);
  for (int c = 4; c <= c_max; ++c) {
    std::optional<GroupVertex> next;
    for (auto& g : children_of(m, 1, variant.side)) {
      const auto& tau = g.pattern.tau;
      if (g.pattern.classification == type && std::find(tau.begin(), tau.end(), tau1) != tau.end()) return g;
      if (scaffold(g.pattern, variant.side) && g.capable()) next = std::move(g);
    }
    if (!next) break;
    m = std::move(*next);
  }
  return std::nullopt;
}

}  // namespace ptree
