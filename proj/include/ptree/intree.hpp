// Weighted rooted in-trees: vertices carry a weight and an opaque
// payload, edges point from child to parent and carry a step size.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ptree {

struct TreeError : std::runtime_error {
  std::string code;
  TreeError(std::string c, const std::string& what) : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

struct Vertex {
  int id = -1;
  int weight = 0;
  bool expandable = false;  // children not computed yet
  std::string tag;          // short classification shown in labels
  std::string key;          // payload fingerprint, orders siblings
  nlohmann::json payload;
};

struct Edge {
  int child, parent, step;
};

class Tree {
 public:
  int add_root(Vertex v, std::string name = "R");
  // the parent must have positive weight
  int add_child(int parent, int step, Vertex v);

  bool empty() const { return nodes_.empty(); }
  int root() const;
  size_t size() const { return nodes_.size(); }
  bool contains(int v) const { return nodes_.count(v) > 0; }
  const Vertex& vertex(int v) const;
  Vertex& vertex(int v);
  std::vector<int> ids() const;  // breadth first, children in sibling order

  int parent(int v) const;
  int step(int v) const;  // step size of the edge leaving v
  // step size first, then key, then insertion
  std::vector<int> children(int v) const;
  std::vector<Edge> edges() const;

  std::vector<int> root_path(int v) const;
  int depth(int v) const;
  int fork(int u, int v) const;
  int distance(int u, int v) const;
  int weighted_distance(int u, int v) const;

  // descendants of a reached through step-size-1 edges only; ids are kept
  Tree minimal_tree(int a) const;
  Tree subtree(int a) const;

  // counts of incoming edges per step size, all children and capable ones
  struct Furcation {
    std::map<int, int> N, C;
  };
  Furcation multifurcation(int a) const;

  std::string label(int v) const;
  std::string child_label(int v) const;
  const std::string& root_name() const { return root_name_; }

  std::map<int, int> weight_partition() const;
  std::map<int, int> step_partition() const;

  nlohmann::json to_json() const;
  static Tree from_json(const nlohmann::json& j);
  std::string to_dot() const;

 private:
  struct Node {
    Vertex v;
    int parent = -1, step = 0;
    long long order = 0;
    std::vector<int> kids;
  };
  const Node& node(int v) const;
  void copy_into(Tree& t, int v, bool step_one) const;
  Tree extract(int a, bool step_one) const;

  std::map<int, Node> nodes_;
  int root_ = -1, next_ = 0;
  long long counter_ = 0;
  std::string root_name_ = "R";
};

// B(v_i) = T_1(v_i) minus T_1(v_(i+1)) for a mainline v_0, v_1, ...
struct BranchGraph {
  Tree tree;
  int root = -1;
};
BranchGraph branch(const Tree& t, const std::vector<int>& mainline, int i);

// canonical text of the rooted tree below v with (weight, tag) labels
// and step sizes folded in; equal iff isomorphic as labeled rooted trees
std::string canonical_encoding(const Tree& t, int v);
std::string canonical_encoding(const BranchGraph& b);

struct Periodicity {
  int rho = 0, lambda = 0;
  int periods = 0;  // full periods the horizon confirms
};
// least (rho, lambda) such that B_(i+lambda) ~ B_i for all i >= rho in the
// horizon, which must show at least two periods; throws horizon-too-short
// for fewer than two branches
std::optional<Periodicity> detect_periodicity(const std::vector<BranchGraph>& branches);

}  // namespace ptree
