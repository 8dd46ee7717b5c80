// Re-presentation of a p-group on generators adapted to its lower
// exponent-p central series, with one exact definition per generator.
#pragma once

#include "ptree/linalg.hpp"
#include "ptree/subgroup.hpp"

namespace ptree {

// Coordinates of P_k / P_{k+1} for the lower exponent-p central series.
class LayerCoords {
 public:
  explicit LayerCoords(const PcGroup& G);
  int layers() const { return int(P_.size()) - 1; }
  int dim(int k) const { return int(pos_[k].size()); }
  const std::vector<Subgroup>& series() const { return P_; }
  // requires x in P_k
  Row coords(int k, const Exps& x) const;

 private:
  const PcGroup* G_;
  std::vector<Subgroup> P_;
  std::vector<Subgroup> comb_;          // basis of P_k containing the basis of P_{k+1}
  std::vector<std::vector<int>> pos_;   // positions in comb_[k] spanning the layer
};

struct Standardized {
  PcGroup group;
  std::vector<Exps> old_to_new;  // images of the old generators
  std::vector<Exps> new_in_old;  // new generators as elements of the old group
};

// weight1, if given, fixes the weight-1 generators (as old elements)
Standardized standardize(const PcGroup& G, const std::vector<Exps>* weight1 = nullptr);

// the group itself when already standard, else its standard form
PcGroup standard_form(const PcGroup& G);

}  // namespace ptree
