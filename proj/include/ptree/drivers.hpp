// Tree navigation over the descendant trees of <243,6> and <243,8>:
// mainline and cover verification, cover sets, pruned trees, fork
// topologies and root-path templates.
#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ptree/catalog.hpp"
#include "ptree/intree.hpp"

namespace ptree {

struct DriverError : std::runtime_error {
  std::string code;
  DriverError(std::string c, const std::string& what) : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

// a group of the tree with everything the drivers look at
struct GroupVertex {
  PcGroup group;  // standard
  AutGroup aut;
  ArtinPattern pattern;  // classification filled in for the side
  int lo = 0, cl = 0, cc = 0;
  int nu = 0, mu = 0;
  Verdict sigma = Verdict::undetermined;

  bool capable() const { return nu > 0; }
};

GroupVertex annotate(PcGroup G, AutGroup A, RootSide side);
GroupVertex annotate(const PcGroup& G, RootSide side);

// immediate descendants of step size s with abelianization (3,3),
// in the deterministic order of descendants_of
std::vector<GroupVertex> children_of(const GroupVertex& v, int s, RootSide side);

// the unique capable child of scaffold type (c.18 / c.21) of step size s;
// throws no-admissible-child or multiple-admissible-children
GroupVertex scaffold_child(const GroupVertex& v, int s, RootSide side);

// root of the tree for the variant, L(sign, 2, 3)
GroupVertex tree_root(const RootVariant& variant);

nlohmann::json vertex_payload(const GroupVertex& v);
Vertex tree_vertex(const GroupVertex& v);

// A Tree whose vertices carry groups.
struct GroupTree {
  Tree tree;
  std::map<int, GroupVertex> groups;
  RootSide side = RootSide::r8;

  int add_root(GroupVertex g, const std::string& name);
  int add_child(int parent, int step, GroupVertex g);
  const GroupVertex& at(int v) const;
};

struct TreeOptions {
  int max_lo = 8;
  bool pruned = true;
  std::set<int> steps;  // empty: every step size up to the nuclear rank
  int threads = 0;      // 0: hardware concurrency
};

// Every retained capable vertex of order at most 3^max_lo is expanded.
// Children of larger order stay in the tree; expandable marks the capable ones.
GroupTree build_tree(const GroupVertex& root, const std::string& name, RootSide side, const TreeOptions& opt);
GroupTree build_pruned_tree(const RootVariant& variant, int max_lo, bool pruned = true);

// pruning rule: drop complex types and incapable scaffold vertices
bool retained(const GroupVertex& v, RootSide side);

// mainline from v: the unique capable step-1 child of scaffold type, as
// far as the tree has been expanded
std::vector<int> tree_mainline(const Tree& t, int v);
// maintrunk from the root, alternating step sizes 1 and 2
std::vector<int> tree_maintrunk(const Tree& t);

// --- mainlines, bottom up against top down ---------------------------

struct MainlineStep {
  int r = 0, c = 0;
  bool confirmed = false;
  Verdict verdict = Verdict::undetermined;
  std::string fingerprint;
  double seconds = 0;
};

struct MainlineReport {
  RootVariant variant;
  int hb = 0, vb = 0;
  std::vector<MainlineStep> steps;
  std::string error;  // code, when navigation stopped
  double seconds = 0;

  bool ok() const;
  nlohmann::json to_json() const;
  std::string summary() const;
};

// the root and the admissibility predicates come from the sign and the
// side of the variant respectively, so a mismatched pair fails to navigate
MainlineReport verify_mainlines(const RootVariant& variant, int hb, int vb, long long budget = 1000000);

// --- cover quotients against tree leaves ----------------------------

struct CoverStep {
  int c = 0;
  bool confirmed = false;
  bool relators_checked = false;
  int leaves = 0;        // admissible leaves among the children
  int leaf_ordinal = 0;  // 1-based position of the matching leaf, 0 if none
  std::string leaf_type;
  std::string fingerprint;  // of the quotient Q
  double seconds = 0;
};

struct CoverReport {
  RootVariant variant;
  int k = 0, vb = 0;
  std::vector<CoverStep> steps;
  std::string error;
  double seconds = 0;

  bool ok() const;
  nlohmann::json to_json() const;
  std::string summary() const;
};

CoverReport verify_cover(const RootVariant& variant, int vb, int k, long long budget = 1000000);

// --- covers ----------------------------------------------------------

struct CoverMember {
  GroupVertex g;
  int vertex = -1;  // in CoverSet::section
  Verdict sigma = Verdict::undetermined, schur_sigma = Verdict::undetermined;
  int d2 = 0;
};

struct CoverSet {
  GroupVertex base;
  int base_vertex = -1;
  int ell = 0;
  std::vector<CoverMember> members;  // base first
  std::vector<int> shafarevich;      // indices of Schur sigma members
  GroupTree section;                 // root, navigated vertices and members

  nlohmann::json to_json() const;
};

// M metabelian of type E on the coclass-2 tree of the side, class >= 4
CoverSet compute_cover(const PcGroup& M, RootSide side, long long budget = 1000000);

// --- fork topology ---------------------------------------------------

struct TopologySegment {
  std::string letter;
  bool capable = false;
  int step = 0;
  bool toward_fork = true;
  bool operator==(const TopologySegment&) const = default;
};

struct TopologySymbol {
  std::vector<TopologySegment> segments;  // u side first, each with the edge it starts
  int fork_index = 0;                     // segments before the fork vertex
  std::string fork_letter;
  bool fork_capable = false;
  int d = 0, w = 0, dcl = 0, dcc = 0, dlo = 0;

  // "E →1 c ←2 E"; stars mark capable vertices when asked
  std::string text(bool stars = false) const;
  TopologySymbol reversed() const;
  bool operator==(const TopologySymbol&) const = default;
  nlohmann::json to_json() const;
};

// letter of the relabeling-orbit type of kappa, a for (0000), ? otherwise
std::string tkt_letter(const ArtinPattern& a);

TopologySymbol fork_topology(const GroupTree& t, int u, int v);

// --- root paths ------------------------------------------------------

struct RootPathVertex {
  int lo = 0, cl = 0, cc = 0;
  std::string letter, type;
  bool capable = false;
  int step = 0;  // of the edge to the parent, 0 at (3,3)
};

struct RootPathReport {
  std::vector<RootPathVertex> path;  // G first
  std::vector<std::string> matches;  // template names
  int c = 0, r = 0;
  std::string X;

  bool matched() const { return !matches.empty(); }
  std::string text() const;
  nlohmann::json to_json() const;
};

// letters from the relabeling orbits of the digit strings
RootPathReport classify_root_path(const PcGroup& G);

// --- census ----------------------------------------------------------

struct ChildCensus {
  int c = 0;  // class of the children, parent is M_(c-1)
  std::map<std::string, int> all, capable;  // type -> count, step 1
  int N1 = 0, C1 = 0;                       // after pruning
};

std::vector<ChildCensus> mainline_census(const RootVariant& variant, int c_from, int c_to);

// the step-1 child of a coclass-2 mainline vertex of class below c_max
// with the given type and some maximal subgroup of abelian type tau1
std::optional<GroupVertex> locate(const RootVariant& variant, const std::string& type, const std::vector<int>& tau1,
                                  int c_max);

// the mainline vertex M_c^(r) reached by navigation
GroupVertex mainline_vertex(const RootVariant& variant, int r, int c);

}  // namespace ptree
