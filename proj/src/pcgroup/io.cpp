#include "ptree/io.hpp"

namespace ptree {

nlohmann::json to_json(const PcGroup& G) {
  nlohmann::json j;
  j["p"] = G.p();
  j["n"] = G.n();
  nlohmann::json pw = nlohmann::json::array();
  for (int i = 0; i < G.n(); ++i) pw.push_back(G.power(i));
  j["powers"] = pw;
  nlohmann::json cm = nlohmann::json::array();
  for (int a = 0; a < G.n(); ++a)
    for (int b = 0; b < a; ++b)
      if (!G.is_id(G.comm_rel(a, b))) cm.push_back({a, b, G.comm_rel(a, b)});
  j["commutators"] = cm;
  j["weights"] = G.weights;
  nlohmann::json df = nlohmann::json::array();
  for (const auto& d : G.defs) df.push_back({int(d.kind), d.j, d.i});
  j["definitions"] = df;
  j["standard"] = G.standard;
  return j;
}

PcGroup pc_from_json(const nlohmann::json& j) {
  const int p = j.at("p").get<int>(), n = j.at("n").get<int>();
  PcGroup G(p, n);
  const auto& pw = j.at("powers");
  if (int(pw.size()) != n) throw GroupError("powers length mismatch");
  for (int i = 0; i < n; ++i) G.set_power(i, pw[i].get<Exps>());
  for (const auto& c : j.at("commutators")) G.set_comm(c[0].get<int>(), c[1].get<int>(), c[2].get<Exps>());
  if (j.contains("weights")) G.weights = j["weights"].get<std::vector<int>>();
  if (j.contains("definitions")) {
    const auto& df = j["definitions"];
    for (int i = 0; i < n && i < int(df.size()); ++i)
      G.defs[i] = {Definition::Kind(df[i][0].get<int>()), df[i][1].get<int>(), df[i][2].get<int>()};
  }
  if (j.contains("standard")) G.standard = j["standard"].get<bool>();
  G.finalize();
  if (!G.consistent()) throw GroupError("inconsistent-input");
  return G;
}

std::string serialize(const PcGroup& G) {
  nlohmann::json j;
  j["p"] = G.p();
  j["n"] = G.n();
  nlohmann::json pw = nlohmann::json::array();
  for (int i = 0; i < G.n(); ++i) pw.push_back(G.power(i));
  j["powers"] = pw;
  nlohmann::json cm = nlohmann::json::array();
  for (int a = 0; a < G.n(); ++a)
    for (int b = 0; b < a; ++b)
      if (!G.is_id(G.comm_rel(a, b))) cm.push_back({a, b, G.comm_rel(a, b)});
  j["commutators"] = cm;
  return j.dump();
}

}  // namespace ptree
