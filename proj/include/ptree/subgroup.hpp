// Subgroups as induced generating sequences, series, quotients.
#pragma once

#include "ptree/pcgroup.hpp"

namespace ptree {

// Canonical induced generating sequence: gens[k] has leading generator
// leads[k] with exponent 1 and exponent 0 at every other lead.
struct Subgroup {
  std::vector<Exps> gens;
  std::vector<int> leads;
  int logorder() const { return int(gens.size()); }
  bool operator==(const Subgroup& o) const { return gens == o.gens; }
};

// subgroup generated by gens; if conj is given, the normal closure under
// conjugation by those elements
Subgroup closure(const PcGroup& G, const std::vector<Exps>& gens,
                 const std::vector<Exps>* conj = nullptr);
Subgroup whole_group(const PcGroup& G);
Subgroup normal_closure(const PcGroup& G, const std::vector<Exps>& gens);
std::vector<Exps> pc_gens(const PcGroup& G);

bool contains(const PcGroup& G, const Subgroup& H, const Exps& x);
bool is_subgroup_of(const PcGroup& G, const Subgroup& H, const Subgroup& K);
bool is_normal(const PcGroup& G, const Subgroup& H);
// exponents of x as a product of the induced sequence, empty if x not in H
std::vector<int> coords(const PcGroup& G, const Subgroup& H, const Exps& x);
// canonical representative of x N (zero at every lead of N)
Exps reduce_mod(const PcGroup& G, const Subgroup& N, Exps x);

Subgroup join(const PcGroup& G, const Subgroup& H, const Subgroup& K);
// [H, K] for normal subgroups H, K
Subgroup commutator(const PcGroup& G, const Subgroup& H, const Subgroup& K);
Subgroup derived_subgroup(const PcGroup& G);
// [H, H] for an arbitrary subgroup H
Subgroup derived_of(const PcGroup& G, const Subgroup& H);

// gamma_1 = G, ..., ending with the trivial subgroup
std::vector<Subgroup> lower_central_series(const PcGroup& G);
// P_0 = G, P_{k+1} = [P_k, G] P_k^p, ending with the trivial subgroup
std::vector<Subgroup> pcentral_series(const PcGroup& G);
std::vector<Subgroup> derived_series(const PcGroup& G);

struct Quotient {
  PcGroup group;
  std::vector<int> kept;  // generators of G surviving as generators of G/N
  Subgroup kernel;
  Exps image(const PcGroup& G, const Exps& x) const;
};

Quotient quotient(const PcGroup& G, const Subgroup& N);

// G / gamma_c(G) for G of class c >= 2
PcGroup parent_projection(const PcGroup& G);

// H as a group in its own right on its induced sequence
PcGroup subgroup_group(const PcGroup& G, const Subgroup& H);

// logarithmic abelian invariants of H/H', sorted descending
std::vector<int> abelian_invariants(const PcGroup& G, const Subgroup& H);
std::vector<int> abelian_invariants(const PcGroup& G);
std::string format_type(const std::vector<int>& t);

}  // namespace ptree
