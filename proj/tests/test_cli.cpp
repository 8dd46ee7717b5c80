#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ptree/cli.hpp"
#include "ptree/io.hpp"
#include "ptree/present.hpp"

using namespace ptree;
namespace fs = std::filesystem;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  int rc = run(args, o, e);
  return {rc, o.str(), e.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ptree_test_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(cli({}).rc == 2);
  CHECK(cli({"frobnicate"}).rc == 2);
  CHECK(cli({"verify", "mainlines"}).rc == 2);
  CHECK(cli({"verify", "mainlines", "--variant", "7"}).rc == 2);
  CHECK(cli({"verify", "covers", "--variant", "8", "--k", "3"}).rc == 2);
  CHECK(cli({"artin", "not-an-id"}).rc == 2);
  CHECK(cli({"artin", "<243,99999>"}).rc == 2);
  Run h = cli({"--help"});
  CHECK(h.rc == 0);
  CHECK(h.out.find("verify") != std::string::npos);
  CHECK(cli({"tree", "dot", "/nonexistent/tree.json"}).rc == 1);
}

TEST_CASE("artin subcommand") {
  Run r = cli({"artin", "G(c=5,a=1,b=0)"});
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("type=E.6") != std::string::npos);
  Run j = cli({"--json", "artin", "<243,8>"});
  REQUIRE(j.rc == 0);
  auto J = nlohmann::json::parse(j.out);
  CHECK(J["type"] == "c.21");
  CHECK(J["lo"] == 5);
  CHECK(J["kappa"] == std::vector<int>{0, 2, 3, 1});
  CHECK(cli({"artin", "<27,1>"}).rc == 2);
}

TEST_CASE("verify subcommands") {
  Run m = cli({"--json", "verify", "mainlines", "--variant", "6", "--hb", "0", "--vb", "2"});
  CHECK(m.rc == 0);
  auto J = nlohmann::json::parse(m.out);
  CHECK(J["steps"].size() == 3);
  Run c = cli({"verify", "covers", "--variant", "8", "--k", "-1", "--vb", "2"});
  CHECK(c.rc == 0);
  CHECK(c.out.find("2 confirmations") != std::string::npos);
}

TEST_CASE("cover and path subcommands") {
  Run c = cli({"--json", "cover", "<2187,304>"});
  REQUIRE(c.rc == 0);
  auto J = nlohmann::json::parse(c.out);
  CHECK(J["members"].size() == 2);
  CHECK(J["members"][0]["name"] == "<2187,304>");
  CHECK(J["members"][1]["name"] == "<6561,622>");
  // the root is of type c, not E
  CHECK(cli({"cover", "<243,8>"}).rc == 1);

  Run p = cli({"path", "classify", "G(c=5,a=1,b=0)"});
  CHECK(p.rc == 0);
  CHECK(p.out.find("E →1 c* →1 c* →2 a* →1 a*") != std::string::npos);
  Run q = cli({"--json", "path", "classify", "Q(e=1,k=0,c=5)"});
  CHECK(q.rc == 1);
  CHECK(nlohmann::json::parse(q.out)["error"] == "no-template-match");
}

TEST_CASE("tree build, file roundtrip and DOT") {
  fs::path d = scratch("tree");
  Run b = cli({"tree", "build", "--variant", "8", "--max-lo", "6", "--out", (d / "t.json").string()});
  REQUIRE(b.rc == 0);
  Tree t = Tree::from_json(nlohmann::json::parse(slurp(d / "t.json")));
  CHECK(t.size() > 1);
  CHECK(t.label(t.root()) == "<243,8>");
  Run o = cli({"tree", "dot", (d / "t.json").string()});
  REQUIRE(o.rc == 0);
  CHECK(o.out.rfind("digraph", 0) == 0);
  CHECK(o.out == t.to_dot());

  // a single vertex
  Tree pt;
  Vertex v;
  v.tag = "a.1";
  pt.add_root(v, "<9,2>");
  std::ofstream(d / "pt.json") << pt.to_json().dump();
  Run p = cli({"tree", "dot", (d / "pt.json").string()});
  REQUIRE(p.rc == 0);
  CHECK(p.out.find("<9,2>") != std::string::npos);
  CHECK(p.out.find("->") == std::string::npos);

  std::ofstream(d / "bad.json") << "{\"vertices\": [";
  CHECK(cli({"tree", "dot", (d / "bad.json").string()}).rc == 1);
  fs::remove_all(d);
}

TEST_CASE("output is byte-identical across runs and with the cache") {
  fs::path d = scratch("det");
  const std::vector<std::string> args = {"--json", "tree", "build", "--variant", "6", "--max-lo", "7", "--pruned"};
  Run a = cli(args);
  Run b = cli(args);
  std::vector<std::string> cached = {"--cache-dir", d.string()};
  cached.insert(cached.end(), args.begin(), args.end());
  Run c = cli(cached);
  Run e = cli(cached);
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out == e.out);
  fs::remove_all(d);
}

TEST_CASE("descendant cache") {
  fs::path d = scratch("cache");
  const PcGroup R = standard_form(catalog_group("<243,8>"));
  std::vector<std::string> direct;
  for (const auto& g : descendants(R, 1).groups) direct.push_back(serialize(g));
  REQUIRE(!direct.empty());
  auto ser = [](const std::vector<PcGroup>& v) {
    std::vector<std::string> s;
    for (const auto& g : v) s.push_back(serialize(g));
    return s;
  };

  Cache c1(d);
  CHECK(ser(cached_descendants(c1, R, 1)) == direct);
  CHECK(c1.misses == 1);
  CHECK(ser(cached_descendants(c1, R, 1)) == direct);
  CHECK(c1.hits == 1);

  SUBCASE("version bump misses") {
    Cache c2(d, std::string(kEngineVersion) + "-next");
    CHECK(ser(cached_descendants(c2, R, 1)) == direct);
    CHECK(c2.hits == 0);
    CHECK(c2.misses == 1);
  }
  SUBCASE("truncated entry is evicted and recomputed") {
    const fs::path p = c1.path_of(c1.key(R, "descendants", {{"s", 1}}));
    const std::string full = slurp(p);
    fs::resize_file(p, full.size() / 2);
    Cache c3(d);
    CHECK(ser(cached_descendants(c3, R, 1)) == direct);
    CHECK(c3.misses == 1);
    REQUIRE(c3.log.size() == 1);
    CHECK(c3.log[0].find("evicted") != std::string::npos);
    CHECK(slurp(p) == full);
  }
  SUBCASE("entry under a foreign key is rejected") {
    const std::string k = c1.key(R, "descendants", {{"s", 1}});
    const std::string other = c1.key(R, "descendants", {{"s", 2}});
    fs::copy_file(c1.path_of(k), c1.path_of(other), fs::copy_options::overwrite_existing);
    Cache c4(d);
    CHECK(!c4.load(other).has_value());
    CHECK(c4.log.size() == 1);
    CHECK(!fs::exists(c4.path_of(other)));
  }
  fs::remove_all(d);
}

TEST_CASE("command cache reports eviction on stderr") {
  fs::path d = scratch("cmd");
  Run a = cli({"--cache-dir", d.string(), "artin", "<729,54>"});
  REQUIRE(a.rc == 0);
  for (const auto& f : fs::directory_iterator(d))
    if (f.path().extension() == ".json") std::ofstream(f.path()) << "garbage";
  Run b = cli({"--cache-dir", d.string(), "artin", "<729,54>"});
  CHECK(b.rc == 0);
  CHECK(b.out == a.out);
  CHECK(b.err.find("evicted") != std::string::npos);
  fs::remove_all(d);
}

TEST_SUITE_END();
