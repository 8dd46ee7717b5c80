// Concrete group families: limit groups and their mainline quotients,
// the cover limit and its quotients, coclass-2 pc-presentations, and a
// small registry of named groups.
#pragma once

#include <optional>
#include <string>

#include "ptree/artin.hpp"
#include "ptree/pquotient.hpp"

namespace ptree {

struct RootVariant {
  int sign;  // +1 or -1
  int e;     // cover-limit parameter, 1 for sign +1
  RootSide side;
  std::string root_name;

  static RootVariant plus() { return {+1, 1, RootSide::r8, "<243,8>"}; }
  static RootVariant minus() { return {-1, 0, RootSide::r6, "<243,6>"}; }
  static RootVariant from_side(RootSide s) { return s == RootSide::r8 ? plus() : minus(); }
};

// <a,t | (at)^3 = a^3, [t,a,t] = a^(3 sign)>
FpGroup limit_presentation(int sign);
// limit group modulo a^(3^r) and [t,a]^(3^l) (c = 2l+1) or t^(3^l) (c = 2l)
FpGroup mainline_quotient(int sign, int r, int c);
FpGroup cover_limit(int e);
// cover limit modulo y w^k v and z w, w = [t,a,...,a] with c-1 entries a,
// v = [w', [t,a]] with w' = [t,a,...,a] with c-3 entries a
FpGroup cover_quotient(int e, int k, int c);
// generators x, y, s2, t3, s3, ..., sc; order 3^(c+2)
PcGroup coclass2_group(int c, int alpha, int beta);

// standard-form p-quotients of the presentations above
PcGroup mainline_group(int sign, int r, int c);
PcGroup cover_group(int e, int k, int c);

PcGroup metabelianization(const PcGroup& G);

// parameter tuples of the coclass-2 presentations with their expected type
struct Coclass2Entry {
  int alpha, beta;
  const char* type;
};
const std::vector<Coclass2Entry>& coclass2_table();

// Catalog ids:
//   L(+,r=R,c=C) | L(-,r=R,c=C)   mainline quotient of the limit group
//   Q(e=E,k=K,c=C)                class-C quotient of the cover limit
//   G(c=C,a=A,b=B)                coclass-2 pc-presentation
//   <O,I>                         one of the named groups below
// Whitespace is ignored.
PcGroup catalog_group(const std::string& id);
bool is_catalog_id(const std::string& id);

// groups known by a library identifier, with the construction used
struct NamedGroup {
  std::string name;
  std::string construction;
};
const std::vector<NamedGroup>& named_groups();
// name of a named group isomorphic to G, if any
std::optional<std::string> identify(const PcGroup& G);

}  // namespace ptree
