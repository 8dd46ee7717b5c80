// Automorphism groups of standard presentations, built up the lower
// exponent-p central series, and their action on p-multiplicators.
#pragma once

#include <map>
#include <optional>

#include "ptree/pcover.hpp"

namespace ptree {

// Images of every generator of the standard group G under the
// homomorphism into H given on the weight-1 generators, computed from the
// definitions of G.  Generators of H at index >= limit are dropped.
std::vector<Exps> extend_images(const PcGroup& G, const PcGroup& H, const std::vector<Exps>& w1, int limit);
// image of x given the images of all generators
Exps map_element(const PcGroup& H, const std::vector<Exps>& full, const Exps& x, int limit);

// G / P_k on the generators of weight <= k of a standard G
PcGroup prefix_group(const PcGroup& G, int k);

// An automorphism of a standard group together with its inverse, each
// given by the images of all generators.
struct Automorphism {
  std::vector<Exps> fwd, bwd;
};

// Automorphisms are composed left to right: then(x, y) applies x first.
class AutGroup {
 public:
  AutGroup() = default;
  explicit AutGroup(const PcGroup& G);

  const PcGroup& group() const { return G_; }
  const std::vector<Automorphism>& generators() const { return gens_; }

  Automorphism identity() const;
  // from the images of the weight-1 generators; throws unless bijective
  Automorphism make(const std::vector<Exps>& w1) const;
  Automorphism then(const Automorphism& x, const Automorphism& y) const;
  Automorphism inverse(const Automorphism& x) const;
  Exps apply(const Automorphism& a, const Exps& x) const;
  bool is_identity(const Automorphism& a) const;

  // whether some element induces the matrix m (rows = images) on G/Phi;
  // available when gl_complete()
  bool gl_contains(const std::vector<Row>& m) const;
  bool gl_complete() const { return gl_complete_; }

  // adds a to the generating set, keeping the set short by sifting
  // through the action on G/Phi and on the layers of the series
  void add(const Automorphism& a);

  // exact order, when known from the construction
  std::optional<std::map<long long, int>> order_factors;
  std::string order_string() const;

 private:
  Row gl_key(const Automorphism& a) const;
  Row layer_vec(const Automorphism& a, int j) const;
  void close_gl();

  PcGroup G_;
  int d_ = 0, c_ = 0;
  bool gl_complete_ = true;
  std::vector<Automorphism> gens_;
  std::vector<Automorphism> glgens_;
  std::map<Row, Automorphism> glreps_;
  struct Stored {
    Automorphism a;
    Row vec;
    int piv;
  };
  std::vector<std::vector<Stored>> layer_;  // layer_[j]: trivial modulo P_(j+1)
};

// Aut(G) for G standard with G/G' of rank d.
AutGroup automorphism_group(const PcGroup& G);

// action of a on the multiplicator as a mu x mu matrix acting on rows
std::vector<Row> multiplicator_action(const PCover& C, const AutGroup& A, const Automorphism& a);

// canonical basis (reduced echelon form) of the span of rows
std::vector<Row> canonical_span(int p, const std::vector<Row>& rows);

struct OrbitResult {
  std::vector<std::vector<Row>> reps;  // one subspace per orbit, canonical
  std::vector<long long> sizes;
  std::vector<std::vector<Automorphism>> stabilizers;  // generating sets
};

// orbits of the automorphisms on a set of subspaces of the multiplicator
// closed under them, with stabilizer generators of each representative
OrbitResult subspace_orbits(const PCover& C, const AutGroup& A, const std::vector<std::vector<Row>>& subs);

// Aut(D) for D standard with D / P_c(D) identified with the base G of A
// (weight-1 generators correspond), from generators of the stabilizer.
AutGroup lift_automorphisms(const AutGroup& A, const std::vector<Automorphism>& stab, const PcGroup& D);

struct Descendant {
  PcGroup group;  // standard, weight-1 generators matching those of the parent
  AutGroup aut;
  long long orbit = 1;
};

// immediate descendants of step size s of the base group of C, where A
// is the automorphism group of that base
std::vector<Descendant> descendants_of(const PCover& C, const AutGroup& A, int s);

// Isomorphism test along the series: at each level the kernel for G is
// carried into the cover of H / P_k and looked up in the orbit of the
// kernel for H.  budget bounds the orbit lengths; nodes reports the
// orbit points visited.
SearchResult isomorphism(const PcGroup& G, const PcGroup& H, long long budget = 1000000);

// fingerprint first, then the test above
Verdict is_isomorphic(const PcGroup& G, const PcGroup& H, long long budget = 1000000);

}  // namespace ptree
