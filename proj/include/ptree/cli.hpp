// Command-line surface and the on-disk result cache.
#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ptree/drivers.hpp"

namespace ptree {

inline constexpr const char* kEngineVersion = "ptree-engine-1";
inline constexpr const char* kCacheEnv = "PTREE_CACHE_DIR";

std::uint64_t fnv1a64(const std::string& s);

// hash of the serialized standard presentation
std::string group_hash(const PcGroup& G);

// One JSON file per entry, read and written under an advisory lock on the
// directory.  Entries that fail to parse or whose key material does not
// match are evicted and reported through log.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir, std::string version = kEngineVersion);

  std::string key(const PcGroup& G, const std::string& op, const nlohmann::json& params) const;
  std::optional<nlohmann::json> load(const std::string& key);
  void store(const std::string& key, const nlohmann::json& value);
  nlohmann::json get_or_compute(const std::string& key, const std::function<nlohmann::json()>& compute);

  const std::filesystem::path& dir() const { return dir_; }
  const std::string& version() const { return version_; }
  std::filesystem::path path_of(const std::string& key) const;

  std::vector<std::string> log;
  int hits = 0, misses = 0;

 private:
  std::filesystem::path dir_;
  std::string version_;
};

// descendants of step size s found through the cache
std::vector<PcGroup> cached_descendants(Cache& cache, const PcGroup& G, int s);

// runs the ptree command line; returns the exit status
// 0 success, 1 unconfirmed or failed, 2 usage
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptree
