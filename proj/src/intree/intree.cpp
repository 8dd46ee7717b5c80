#include "ptree/intree.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace ptree {

using nlohmann::json;

const Tree::Node& Tree::node(int v) const {
  auto it = nodes_.find(v);
  if (it == nodes_.end()) throw TreeError("unknown-vertex", std::to_string(v));
  return it->second;
}

int Tree::add_root(Vertex v, std::string name) {
  if (!nodes_.empty()) throw TreeError("root-exists", "tree already has a root");
  v.id = next_++;
  root_ = v.id;
  root_name_ = std::move(name);
  Node n;
  n.v = std::move(v);
  n.order = counter_++;
  nodes_.emplace(root_, std::move(n));
  return root_;
}

int Tree::add_child(int parent, int step, Vertex v) {
  auto it = nodes_.find(parent);
  if (it == nodes_.end()) throw TreeError("unknown-vertex", std::to_string(parent));
  if (step < 1) throw TreeError("bad-step", "step sizes are positive");
  if (v.weight < 0) throw TreeError("bad-weight", "weights are non-negative");
  if (it->second.v.weight == 0) throw TreeError("leaf-parent", "a vertex of weight 0 has no children");
  v.id = next_++;
  Node n;
  n.parent = parent;
  n.step = step;
  n.v = std::move(v);
  n.order = counter_++;
  const int id = n.v.id;
  nodes_.emplace(id, std::move(n));
  nodes_.at(parent).kids.push_back(id);
  return id;
}

int Tree::root() const {
  if (root_ < 0) throw TreeError("empty-tree", "no root");
  return root_;
}

const Vertex& Tree::vertex(int v) const { return node(v).v; }
Vertex& Tree::vertex(int v) { return const_cast<Node&>(node(v)).v; }

int Tree::parent(int v) const {
  const Node& n = node(v);
  if (n.parent < 0) throw TreeError("root-has-no-parent", std::to_string(v));
  return n.parent;
}

int Tree::step(int v) const {
  const Node& n = node(v);
  if (n.parent < 0) throw TreeError("root-has-no-parent", std::to_string(v));
  return n.step;
}

std::vector<int> Tree::children(int v) const {
  std::vector<int> k = node(v).kids;
  std::sort(k.begin(), k.end(), [&](int a, int b) {
    const Node &x = nodes_.at(a), &y = nodes_.at(b);
    if (x.step != y.step) return x.step < y.step;
    if (x.v.key != y.v.key) return x.v.key < y.v.key;
    return x.order < y.order;
  });
  return k;
}

std::vector<int> Tree::ids() const {
  std::vector<int> out;
  if (root_ < 0) return out;
  std::deque<int> q{root_};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    out.push_back(v);
    for (int c : children(v)) q.push_back(c);
  }
  return out;
}

std::vector<Edge> Tree::edges() const {
  std::vector<Edge> e;
  for (int v : ids())
    if (v != root_) e.push_back({v, nodes_.at(v).parent, nodes_.at(v).step});
  return e;
}

std::vector<int> Tree::root_path(int v) const {
  std::vector<int> p{v};
  for (int u = node(v).parent; u >= 0; u = nodes_.at(u).parent) p.push_back(u);
  return p;
}

int Tree::depth(int v) const { return int(root_path(v).size()) - 1; }

int Tree::fork(int u, int v) const {
  auto pu = root_path(u), pv = root_path(v);
  std::reverse(pu.begin(), pu.end());
  std::reverse(pv.begin(), pv.end());
  int f = pu[0];
  for (size_t k = 0; k < std::min(pu.size(), pv.size()) && pu[k] == pv[k]; ++k) f = pu[k];
  return f;
}

int Tree::distance(int u, int v) const {
  int f = fork(u, v);
  return depth(u) + depth(v) - 2 * depth(f);
}

int Tree::weighted_distance(int u, int v) const {
  int f = fork(u, v);
  int w = 0;
  for (int x : {u, v})
    for (; x != f; x = nodes_.at(x).parent) w += nodes_.at(x).step;
  return w;
}

void Tree::copy_into(Tree& t, int v, bool step_one) const {
  const Node& n = nodes_.at(v);
  for (int c : n.kids) {
    const Node& k = nodes_.at(c);
    if (step_one && k.step != 1) continue;
    Node m;
    m.v = k.v;
    m.parent = v;
    m.step = k.step;
    m.order = k.order;
    t.nodes_.emplace(c, std::move(m));
    t.nodes_.at(v).kids.push_back(c);
    copy_into(t, c, step_one);
  }
}

Tree Tree::minimal_tree(int a) const { return extract(a, true); }
Tree Tree::subtree(int a) const { return extract(a, false); }

Tree Tree::extract(int a, bool step_one) const {
  Tree t;
  Node r;
  r.v = node(a).v;
  r.order = node(a).order;
  t.nodes_.emplace(a, std::move(r));
  t.root_ = a;
  t.root_name_ = label(a);
  copy_into(t, a, step_one);
  t.next_ = next_;
  t.counter_ = counter_;
  return t;
}

Tree::Furcation Tree::multifurcation(int a) const {
  const Node& n = node(a);
  if (n.v.expandable) throw TreeError("vertex-not-expanded", std::to_string(a));
  Furcation f;
  for (int c : n.kids) {
    const Node& k = nodes_.at(c);
    f.N[k.step]++;
    if (k.v.weight >= 1) f.C[k.step]++;
    else f.C.emplace(k.step, 0);
  }
  return f;
}

std::string Tree::label(int v) const {
  return node(v).parent < 0 ? root_name_ : child_label(v);
}

std::string Tree::child_label(int v) const {
  const Node& n = node(v);
  if (n.parent < 0) throw TreeError("root-has-no-label", std::to_string(v));
  int i = 0;
  for (int c : children(n.parent)) {
    if (nodes_.at(c).step == n.step) ++i;
    if (c == v) break;
  }
  return label(n.parent) + "-#" + std::to_string(n.step) + ";" + std::to_string(i);
}

std::map<int, int> Tree::weight_partition() const {
  std::map<int, int> m;
  for (const auto& [id, n] : nodes_) m[n.v.weight]++;
  return m;
}

std::map<int, int> Tree::step_partition() const {
  std::map<int, int> m;
  for (const auto& [id, n] : nodes_)
    if (n.parent >= 0) m[n.step]++;
  return m;
}

json Tree::to_json() const {
  json vs = json::array(), es = json::array();
  for (int v : ids()) {
    const Vertex& x = nodes_.at(v).v;
    vs.push_back({{"id", v},
                  {"weight", x.weight},
                  {"fingerprint", x.key},
                  {"expandable", x.expandable},
                  {"tag", x.tag},
                  {"payload", x.payload}});
  }
  for (const auto& e : edges()) es.push_back({e.child, e.parent, e.step});
  return {{"root", root_}, {"root_name", root_name_}, {"vertices", vs}, {"edges", es}};
}

Tree Tree::from_json(const json& j) {
  Tree t;
  std::map<int, Vertex> vs;
  for (const auto& x : j.at("vertices")) {
    Vertex v;
    v.id = x.at("id").get<int>();
    v.weight = x.at("weight").get<int>();
    v.key = x.value("fingerprint", "");
    v.expandable = x.value("expandable", false);
    v.tag = x.value("tag", "");
    if (x.contains("payload")) v.payload = x.at("payload");
    if (!vs.emplace(v.id, v).second) throw TreeError("bad-tree-file", "duplicate vertex id");
  }
  const int r = j.at("root").get<int>();
  if (!vs.count(r)) throw TreeError("bad-tree-file", "root not among the vertices");
  t.root_ = r;
  t.root_name_ = j.value("root_name", "R");
  for (auto& [id, v] : vs) {
    Node n;
    n.v = v;
    n.order = t.counter_++;
    t.nodes_.emplace(id, std::move(n));
    t.next_ = std::max(t.next_, id + 1);
  }
  for (const auto& e : j.at("edges")) {
    const int c = e.at(0).get<int>(), p = e.at(1).get<int>(), s = e.at(2).get<int>();
    if (!t.nodes_.count(c) || !t.nodes_.count(p)) throw TreeError("bad-tree-file", "edge to unknown vertex");
    Node& n = t.nodes_.at(c);
    if (n.parent >= 0 || c == r) throw TreeError("bad-tree-file", "vertex with two outgoing edges");
    if (s < 1) throw TreeError("bad-tree-file", "step sizes are positive");
    n.parent = p;
    n.step = s;
    t.nodes_.at(p).kids.push_back(c);
  }
  // every vertex must reach the root
  for (const auto& [id, n] : t.nodes_) {
    int u = id;
    for (size_t k = 0; k <= t.nodes_.size() && u != r; ++k) {
      u = t.nodes_.at(u).parent;
      if (u < 0) throw TreeError("bad-tree-file", "vertex not connected to the root");
    }
    if (u != r) throw TreeError("bad-tree-file", "cycle");
  }
  return t;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    o += c;
  }
  return o;
}

}  // namespace

std::string Tree::to_dot() const {
  std::ostringstream os;
  os << "digraph tree {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int v : ids()) {
    std::string l = label(v);
    const Vertex& x = nodes_.at(v).v;
    if (!x.tag.empty()) l += " " + x.tag;
    os << "  v" << v << " [label=\"" << dot_escape(l) << "\"";
    if (x.expandable) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : edges()) os << "  v" << e.child << " -> v" << e.parent << " [label=" << e.step << "];\n";
  os << "}\n";
  return os.str();
}

// ---- branches and periodicity ---------------------------------------------

BranchGraph branch(const Tree& t, const std::vector<int>& mainline, int i) {
  if (i < 0 || i + 1 >= int(mainline.size()))
    throw TreeError("index-beyond-horizon", "branch " + std::to_string(i) + " needs the next mainline vertex");
  for (size_t k = 1; k < mainline.size(); ++k)
    if (t.parent(mainline[k]) != mainline[k - 1] || t.step(mainline[k]) != 1)
      throw TreeError("not-a-mainline", "consecutive vertices must be joined by step-size-1 edges");
  const int v = mainline[i];
  if (t.vertex(v).expandable) throw TreeError("index-beyond-horizon", "mainline vertex not expanded");
  Tree T1 = t.minimal_tree(v);
  Tree cut = t.minimal_tree(mainline[i + 1]);
  BranchGraph b;
  b.root = v;
  Vertex r = t.vertex(v);
  b.tree.add_root(r, t.label(v));
  // rebuild T1 minus the cut, keeping the local vertex order
  std::map<int, int> local{{v, b.tree.root()}};
  for (int x : T1.ids()) {
    if (x == v || cut.contains(x)) continue;
    local[x] = b.tree.add_child(local.at(T1.parent(x)), T1.step(x), T1.vertex(x));
    b.tree.vertex(local[x]).payload["source"] = x;
  }
  return b;
}

std::string canonical_encoding(const Tree& t, int v) {
  const Vertex& x = t.vertex(v);
  std::vector<std::string> kids;
  for (int c : t.children(v)) kids.push_back(std::to_string(t.step(c)) + ":" + canonical_encoding(t, c));
  std::sort(kids.begin(), kids.end());
  std::string s = "(" + std::to_string(x.weight) + "," + x.tag;
  for (const auto& k : kids) s += k;
  return s + ")";
}

std::string canonical_encoding(const BranchGraph& b) { return canonical_encoding(b.tree, b.tree.root()); }

std::optional<Periodicity> detect_periodicity(const std::vector<BranchGraph>& branches) {
  const int h = int(branches.size());
  if (h < 2) throw TreeError("horizon-too-short", "need at least two branches");
  std::vector<std::string> enc;
  for (const auto& b : branches) enc.push_back(canonical_encoding(b));
  for (int rho = 0; rho < h; ++rho)
    for (int lambda = 1; rho + 2 * lambda <= h; ++lambda) {
      bool ok = true;
      for (int i = rho; i + lambda < h && ok; ++i) ok = enc[i] == enc[i + lambda];
      if (ok) return Periodicity{rho, lambda, (h - rho) / lambda};
    }
  return std::nullopt;
}

}  // namespace ptree
