// Finitely presented groups and their p-quotients.
#pragma once

#include <string>
#include <vector>

#include "ptree/pcgroup.hpp"

namespace ptree {

// Word over the generators, kept symbolic: powers carry their exponent,
// commutators are left-normed, a^b is conjugation.
struct Word {
  enum Kind { one, gen, mul, pow, comm, conj } kind = one;
  int g = -1;
  long long e = 0;
  std::vector<Word> args;

  static Word identity() { return {}; }
  static Word generator(int i) { return {gen, i, 0, {}}; }
};

Word operator*(const Word& a, const Word& b);
Word power(const Word& a, long long e);
Word inverse(const Word& a);
Word commutator(const std::vector<Word>& ws);  // [w1, w2, ..., wk] left-normed
Word commutator(const Word& a, const Word& b);
Word conjugate(const Word& a, const Word& b);   // a^b = b^-1 a b

struct FpGroup {
  std::vector<std::string> gens;
  std::vector<Word> relators;
  Word g(const std::string& name) const;
};

// Text form: first non-comment line lists the generators separated by
// commas; every further line is a relator or an equation lhs = rhs.
FpGroup parse_fp_group(const std::string& text);
Word parse_word(const FpGroup& F, const std::string& text);
std::string format_word(const FpGroup& F, const Word& w);
std::string format_fp_group(const FpGroup& F);

// value of w under generator images in G (images of F's generators)
Exps evaluate(const PcGroup& G, const std::vector<Exps>& images, const Word& w);
// exponent sum of every generator, modulo p
std::vector<int> exponent_sums(const Word& w, int ngens, int p);

struct QuotientResult {
  PcGroup quotient;          // standard presentation
  std::vector<Exps> images;  // images of the generators of F
  int achieved_class = 0;
  bool relators_checked = false;
};

QuotientResult p_quotient(const FpGroup& F, int p, int c);

}  // namespace ptree
