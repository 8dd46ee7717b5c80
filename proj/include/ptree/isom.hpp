// Isomorphism testing by lifting generator images along the lower
// exponent-p central series.
#pragma once

#include <optional>
#include <string>

#include "ptree/pcgroup.hpp"

namespace ptree {

enum class Verdict { no, yes, undetermined };

std::string to_string(Verdict v);

struct SearchResult {
  Verdict verdict = Verdict::no;
  std::vector<Exps> images;  // images of the weight-1 generators of G in H
  long long nodes = 0;
};

// Searches for an isomorphism G -> H.  Both groups must be standard.  If
// level0 is given, only those images modulo the Frattini subgroup of H
// are tried (each entry lists one image per weight-1 generator of G).
SearchResult find_isomorphism(const PcGroup& G, const PcGroup& H, long long budget,
                              const std::vector<std::vector<Exps>>* level0 = nullptr);

// invariant string; isomorphic groups always share it
std::string fingerprint(const PcGroup& G);

}  // namespace ptree
