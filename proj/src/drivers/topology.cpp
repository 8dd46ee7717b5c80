#include <algorithm>
#include <sstream>

#include "ptree/drivers.hpp"

namespace ptree {

std::string tkt_letter(const ArtinPattern& a) {
  const std::string t = kappa_orbit_type(a.kappa);
  if (!t.empty()) return t.substr(0, 1);
  if (a.nTotal == int(a.kappa.size())) return "a";
  return "?";
}

std::string TopologySymbol::text(bool stars) const {
  std::ostringstream os;
  auto name = [&](const std::string& l, bool cap) { return l + (stars && cap ? "*" : ""); };
  for (int i = 0; i < fork_index; ++i) {
    const auto& s = segments[i];
    os << name(s.letter, s.capable) << " →" << s.step << " ";
  }
  os << name(fork_letter, fork_capable);
  for (size_t i = fork_index; i < segments.size(); ++i) {
    const auto& s = segments[i];
    os << " ←" << s.step << " " << name(s.letter, s.capable);
  }
  return os.str();
}

TopologySymbol TopologySymbol::reversed() const {
  TopologySymbol r = *this;
  r.segments.assign(segments.rbegin(), segments.rend());
  for (auto& s : r.segments) s.toward_fork = !s.toward_fork;
  r.fork_index = int(segments.size()) - fork_index;
  r.dcl = -dcl;
  r.dcc = -dcc;
  r.dlo = -dlo;
  return r;
}

nlohmann::json TopologySymbol::to_json() const {
  nlohmann::json seg = nlohmann::json::array();
  for (const auto& s : segments)
    seg.push_back({{"letter", s.letter}, {"capable", s.capable}, {"step", s.step},
                   {"direction", s.toward_fork ? "toward-fork" : "from-fork"}});
  return {{"symbol", text()}, {"segments", seg}, {"fork_index", fork_index}, {"fork", fork_letter},
          {"d", d}, {"w", w}, {"dcl", dcl}, {"dcc", dcc}, {"dlo", dlo}};
}

TopologySymbol fork_topology(const GroupTree& t, int u, int v) {
  const Tree& T = t.tree;
  const int f = T.fork(u, v);
  auto seg = [&](int x, bool toward) {
    const GroupVertex& g = t.at(x);
    return TopologySegment{tkt_letter(g.pattern), g.capable(), T.step(x), toward};
  };
  TopologySymbol s;
  for (int x = u; x != f; x = T.parent(x)) s.segments.push_back(seg(x, true));
  s.fork_index = int(s.segments.size());
  std::vector<TopologySegment> down;
  for (int x = v; x != f; x = T.parent(x)) down.push_back(seg(x, false));
  s.segments.insert(s.segments.end(), down.rbegin(), down.rend());
  const GroupVertex& gf = t.at(f);
  s.fork_letter = tkt_letter(gf.pattern);
  s.fork_capable = gf.capable();
  s.d = int(s.segments.size());
  for (const auto& x : s.segments) s.w += x.step;
  const GroupVertex &gu = t.at(u), &gv = t.at(v);
  s.dcl = gv.cl - gu.cl;
  s.dcc = gv.cc - gu.cc;
  s.dlo = gv.lo - gu.lo;
  return s;
}

}  // namespace ptree
