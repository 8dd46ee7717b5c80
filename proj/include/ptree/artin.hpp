// Artin transfers of p-groups with abelianization (p,p): kernel type,
// target type, admissibility predicates, sigma-groups.
#pragma once

#include <string>
#include <vector>

#include "ptree/autgroup.hpp"
#include "ptree/subgroup.hpp"

namespace ptree {

enum class RootSide { r6, r8 };  // trees rooted at <243,6> resp. <243,8>
std::string to_string(RootSide s);

struct ArtinPattern {
  std::vector<int> kappa;              // 0 = total kernel, j = kernel contains A_j
  int nTotal = 0, nFixed = 0, occupation = 0, repetitions = 0, intersection = 0;
  std::vector<std::vector<int>> tau;   // abelian type of each M_i, A-list order
  std::string classification = "unclassified";

  std::vector<std::vector<int>> tau_sorted() const;
};

struct Transfer {
  Subgroup kernel;
  std::vector<int> target_type;
};

// Transfer from G to M_i / M_i' for i in 1..p+1, relative to the A-list
// (y, x, x y, ..., x y^(p-1)) with transversal generators (x, y, ..., y),
// x and y being the first two generators. perm reorders both lists.
Transfer transfer(const PcGroup& G, int i, const std::vector<int>* perm = nullptr);

ArtinPattern artin_pattern(const PcGroup& G, const std::vector<int>* perm = nullptr);
// counters from the digits alone
void recount(ArtinPattern& a);
std::string classify_tkt(const ArtinPattern& a, RootSide side);
// flag 0: scaffold type (c.18 / c.21), 1: E.6 / E.8, 2: E.14 / E.9
bool is_admissible(const PcGroup& G, int flag, RootSide side);
bool is_admissible(const ArtinPattern& a, int flag, RootSide side);
bool is_complex_type(const ArtinPattern& a);  // H.4 or G.16

// name of the type whose digit string lies in the orbit of kappa under
// relabeling the maximal subgroups, from the strings c.18 (0122),
// c.21 (0231), E.6 (1122), E.8 (1231), E.9 (2231) and (3231), E.14 (3122) and (4122),
// H.4 (2122), G.16 (4231); empty when kappa is in none of these orbits
std::string kappa_orbit_type(const std::vector<int>& kappa);

std::string format_pattern(const ArtinPattern& a);

// some automorphism induces inversion on G/G'; needs G/G' elementary
Verdict is_sigma(const PcGroup& G, long long budget = 1000000);
Verdict is_schur_sigma(const PcGroup& G, long long budget = 1000000);

}  // namespace ptree
