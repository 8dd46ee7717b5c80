#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ptree/cli.hpp"
#include "ptree/io.hpp"
#include "ptree/present.hpp"

namespace ptree {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Result {
  nlohmann::json json;
  std::string text;
  int status = 0;

  nlohmann::json pack() const { return {{"json", json}, {"text", text}, {"status", status}}; }
  static Result unpack(const nlohmann::json& j) { return {j.at("json"), j.at("text"), j.at("status")}; }
};

RootVariant variant_of(int v) { return v == 6 ? RootVariant::minus() : RootVariant::plus(); }

PcGroup group_of(const std::string& id) {
  if (!is_catalog_id(id)) throw UsageError("not a catalog id: " + id);
  try {
    return standard_form(catalog_group(id));
  } catch (const GroupError& e) {
    throw UsageError(e.what());
  }
}

std::string type_name(const ArtinPattern& a) {
  std::string t = kappa_orbit_type(a.kappa);
  return t.empty() ? "unclassified" : t;
}

Result artin_command(const std::string& id) {
  PcGroup G = group_of(id);
  ArtinPattern a = artin_pattern(G);
  a.classification = type_name(a);
  nlohmann::json tau = nlohmann::json::array();
  for (const auto& t : a.tau) tau.push_back(format_type(t));
  const int cl = int(lower_central_series(G).size()) - 1;
  Result r;
  r.json = {{"id", id},
            {"hash", group_hash(G)},
            {"lo", G.n()},
            {"cl", cl},
            {"cc", G.n() - cl},
            {"kappa", a.kappa},
            {"N", a.nTotal},
            {"F", a.nFixed},
            {"O", a.occupation},
            {"R", a.repetitions},
            {"I", a.intersection},
            {"type", a.classification},
            {"tau", tau},
            {"pattern", format_pattern(a)},
            {"sigma", to_string(is_sigma(G))}};
  if (auto n = identify(G)) r.json["name"] = *n;
  r.text = format_pattern(a) + "\n";
  return r;
}

Result cover_command(const std::string& id, long long budget) {
  PcGroup M = group_of(id);
  const std::string t = kappa_orbit_type(artin_pattern(M).kappa);
  RootSide side;
  if (t == "E.8" || t == "E.9")
    side = RootSide::r8;
  else if (t == "E.6" || t == "E.14")
    side = RootSide::r6;
  else
    throw DriverError("hypothesis-violation", "type " + (t.empty() ? std::string("unclassified") : t) + " is not E");
  CoverSet cs = compute_cover(M, side, budget);
  Result r;
  r.json = cs.to_json();
  r.json["id"] = id;
  std::ostringstream os;
  os << "cover of " << id << " (l=" << cs.ell << "): " << cs.members.size() << " members\n";
  for (size_t i = 0; i < cs.members.size(); ++i) {
    const auto& m = cs.members[i];
    auto name = identify(m.g.group);
    if (name) r.json["members"][i]["name"] = *name;
    os << "  " << cs.section.tree.label(m.vertex) << "  lo=" << m.g.lo << " cl=" << m.g.cl << " cc=" << m.g.cc
       << " sigma=" << to_string(m.sigma) << " schur=" << to_string(m.schur_sigma) << " d2=" << m.d2
       << (name ? "  " + *name : "") << "\n";
  }
  os << "Shafarevich cover: " << cs.shafarevich.size() << " member" << (cs.shafarevich.size() == 1 ? "" : "s") << "\n";
  r.text = os.str();
  return r;
}

Result path_command(const std::string& id) {
  RootPathReport rep = classify_root_path(group_of(id));
  Result r;
  r.json = rep.to_json();
  r.json["id"] = id;
  std::ostringstream os;
  os << rep.text() << "\n";
  if (rep.matched()) {
    for (const auto& m : rep.matches) os << "template " << m << "  (c=" << rep.c << ", r=" << rep.r << ", X=" << rep.X << ")\n";
  } else {
    os << "no-template-match (c=" << rep.c << ", r=" << rep.r << ", X=" << rep.X << ")\n";
  }
  r.text = os.str();
  r.status = rep.matched() ? 0 : 1;
  return r;
}

Result tree_build(int variant, int max_lo, bool pruned) {
  GroupTree T = build_pruned_tree(variant_of(variant), max_lo, pruned);
  Result r;
  r.json = T.tree.to_json();
  std::ostringstream os;
  os << T.tree.size() << " vertices, maintrunk " << tree_maintrunk(T.tree).size() << ", mainline "
     << tree_mainline(T.tree, T.tree.root()).size() << "\n";
  r.text = os.str();
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
  if (!f) throw std::runtime_error("io-failure: cannot write " + path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"descendant trees of 3-groups with abelianization (3,3)", "ptree"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string cache_dir;
  long long budget = 1000000;
  bool json = false;
  app.add_option("--cache-dir", cache_dir, std::string("result cache directory (default $") + kCacheEnv + ")");
  app.add_option("--budget", budget, "isomorphism search budget")->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "machine-readable output");

  int variant = 8, hb = 0, vb = 4, k = 0, max_lo = 8;
  bool pruned = false;
  std::string id, file, out_file;

  auto* verify = app.add_subcommand("verify", "verify mainlines or covers");
  verify->require_subcommand(1);
  auto* ml = verify->add_subcommand("mainlines", "bottom up against top down mainline quotients");
  auto* cv = verify->add_subcommand("covers", "cover-limit quotients against tree leaves");
  for (auto* s : {ml, cv}) {
    s->add_option("--variant", variant, "root <243,6> or <243,8>")->required()->check(CLI::IsMember({6, 8}));
    s->add_option("--vb", vb, "mainline steps")->check(CLI::PositiveNumber);
  }
  ml->add_option("--hb", hb, "maintrunk double steps")->check(CLI::NonNegativeNumber);
  cv->add_option("--k", k, "cover-limit parameter")->check(CLI::IsMember({-1, 0, 1}));

  auto* artin = app.add_subcommand("artin", "Artin pattern of a catalog group");
  artin->add_option("id", id, "catalog id")->required();
  auto* cover = app.add_subcommand("cover", "cover of a metabelian group of type E");
  cover->add_option("id", id, "catalog id")->required();

  auto* tree = app.add_subcommand("tree", "build or export trees");
  tree->require_subcommand(1);
  auto* build = tree->add_subcommand("build", "descendant tree of a root");
  build->add_option("--variant", variant, "root <243,6> or <243,8>")->required()->check(CLI::IsMember({6, 8}));
  build->add_option("--max-lo", max_lo, "expand vertices of order up to 3^L")->required()->check(CLI::Range(5, 14));
  build->add_flag("--pruned", pruned, "drop complex types and incapable scaffold vertices");
  build->add_option("--out", out_file, "write the tree here instead of stdout");
  auto* dot = tree->add_subcommand("dot", "tree file to DOT");
  dot->add_option("file", file, "tree JSON file")->required();

  auto* path = app.add_subcommand("path", "root paths");
  path->require_subcommand(1);
  auto* classify = path->add_subcommand("classify", "match the root path against the templates");
  classify->add_option("id", id, "catalog id")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  if (cache_dir.empty())
    if (const char* env = std::getenv(kCacheEnv)) cache_dir = env;
  std::optional<Cache> cache;

  try {
    if (!cache_dir.empty()) cache.emplace(cache_dir);
    // results keyed by the group the command starts from
    auto cached = [&](const PcGroup& G, const std::string& op, const nlohmann::json& params,
                      const std::function<Result()>& f) {
      if (!cache) return f();
      Result r = Result::unpack(cache->get_or_compute(cache->key(G, op, params), [&] { return f().pack(); }));
      for (const auto& l : cache->log) err << "cache: " << l << "\n";
      cache->log.clear();
      return r;
    };

    if (*dot) {
      std::ifstream in(file);
      if (!in) throw std::runtime_error("io-failure: cannot read " + file);
      nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
      if (j.is_discarded()) throw TreeError("bad-tree-file", file + " is not JSON");
      out << Tree::from_json(j).to_dot();
      return 0;
    }

    Result r;
    if (*ml) {
      const RootVariant v = variant_of(variant);
      r = cached(mainline_group(v.sign, 2, 3), "verify-mainlines", {{"hb", hb}, {"vb", vb}, {"budget", budget}}, [&] {
        auto rep = verify_mainlines(v, hb, vb, budget);
        return Result{rep.to_json(), rep.summary(), rep.ok() ? 0 : 1};
      });
    } else if (*cv) {
      const RootVariant v = variant_of(variant);
      r = cached(mainline_group(v.sign, 2, 3), "verify-covers", {{"k", k}, {"vb", vb}, {"budget", budget}}, [&] {
        auto rep = verify_cover(v, vb, k, budget);
        return Result{rep.to_json(), rep.summary(), rep.ok() ? 0 : 1};
      });
    } else if (*artin) {
      PcGroup G = group_of(id);
      r = cached(G, "artin", {}, [&] { return artin_command(id); });
    } else if (*cover) {
      PcGroup G = group_of(id);
      r = cached(G, "cover", {{"budget", budget}}, [&] { return cover_command(id, budget); });
    } else if (*classify) {
      PcGroup G = group_of(id);
      r = cached(G, "path", {}, [&] { return path_command(id); });
    } else if (*build) {
      const RootVariant v = variant_of(variant);
      r = cached(mainline_group(v.sign, 2, 3), "tree", {{"max_lo", max_lo}, {"pruned", pruned}},
                 [&] { return tree_build(variant, max_lo, pruned); });
      const std::string tree_text = r.json.dump(1) + "\n";
      if (out_file.empty()) {
        out << tree_text;
        return r.status;
      }
      write_file(out_file, tree_text);
      if (json)
        out << nlohmann::json{{"file", out_file}, {"vertices", r.json["vertices"].size()}}.dump(2) << "\n";
      else
        out << r.text;
      return r.status;
    }
    if (json)
      out << r.json.dump(2) << "\n";
    else
      out << r.text;
    return r.status;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ptree
