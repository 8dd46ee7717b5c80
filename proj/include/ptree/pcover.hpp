// p-covering group, multiplicator, nucleus and immediate descendants.
#pragma once

#include <optional>

#include "ptree/isom.hpp"
#include "ptree/linalg.hpp"
#include "ptree/subgroup.hpp"

namespace ptree {

struct PCover {
  PcGroup base;   // standard presentation of G
  PcGroup cover;  // generators of base followed by mu tail generators
  int d = 0;      // generator rank of G
  int mu = 0, nu = 0;
  Subgroup multiplicator, nucleus;
  // nucleus as a subspace of the tail coordinates F_p^mu
  std::vector<Row> nucleus_rows;
};

PCover p_cover(const PcGroup& G);

int multiplicator_rank(const PcGroup& G);
int nuclear_rank(const PcGroup& G);
int relation_rank(const PcGroup& G);

// allowable subgroups of step size s, each given by a basis of U inside
// the tail coordinates of the multiplicator
std::vector<std::vector<Row>> allowable_subgroups(const PCover& C, int s);

// cover / U for U given in tail coordinates
PcGroup descendant_of(const PCover& C, const std::vector<Row>& U);

struct Descendants {
  std::vector<PcGroup> groups;  // one per isomorphism class, deterministic order
  std::vector<long long> orbit_sizes;  // allowable subgroups giving each group
  bool step_exceeds_nucleus = false;
  int candidates = 0;           // allowable subgroups examined
};

// Immediate descendants of step size s, one per orbit of Aut(G) on the
// allowable subgroups.
Descendants descendants(const PcGroup& G, int s);

}  // namespace ptree
