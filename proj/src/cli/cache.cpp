#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ptree/cli.hpp"
#include "ptree/io.hpp"
#include "ptree/present.hpp"

namespace ptree {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class DirLock {
 public:
  DirLock(const fs::path& dir, bool exclusive) {
    fd_ = ::open((dir / ".lock").c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw std::runtime_error("io-failure: cannot open lock in " + dir.string());
    ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
  }
  ~DirLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

std::string group_hash(const PcGroup& G) { return hex(fnv1a64(serialize(standard_form(G)))); }

Cache::Cache(fs::path dir, std::string version) : dir_(std::move(dir)), version_(std::move(version)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw std::runtime_error("io-failure: cannot create " + dir_.string() + ": " + ec.message());
}

std::string Cache::key(const PcGroup& G, const std::string& op, const nlohmann::json& params) const {
  return group_hash(G) + "-" + op + "-" + hex(fnv1a64(params.dump() + "|" + version_));
}

fs::path Cache::path_of(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<nlohmann::json> Cache::load(const std::string& key) {
  const fs::path p = path_of(key);
  std::string text;
  {
    DirLock lock(dir_, false);
    std::ifstream in(p);
    if (!in) {
      ++misses;
      return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  const bool valid = !j.is_discarded() && j.is_object() && j.contains("value") && j.value("key", "") == key;
  if (!valid) {
    DirLock lock(dir_, true);
    fs::remove(p);
    log.push_back("evicted corrupt cache entry " + p.filename().string());
    ++misses;
    return std::nullopt;
  }
  if (j.value("version", "") != version_) {
    ++misses;
    return std::nullopt;
  }
  ++hits;
  return j["value"];
}

void Cache::store(const std::string& key, const nlohmann::json& value) {
  const fs::path p = path_of(key);
  const fs::path tmp = p.string() + ".tmp" + std::to_string(::getpid());
  nlohmann::json j = {{"key", key}, {"version", version_}, {"value", value}};
  DirLock lock(dir_, true);
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("io-failure: cannot write " + tmp.string());
    out << j.dump() << "\n";
    if (!out) throw std::runtime_error("io-failure: short write to " + tmp.string());
  }
  fs::rename(tmp, p);
}

nlohmann::json Cache::get_or_compute(const std::string& key, const std::function<nlohmann::json()>& compute) {
  if (auto v = load(key)) return *v;
  nlohmann::json v = compute();
  store(key, v);
  return v;
}

std::vector<PcGroup> cached_descendants(Cache& cache, const PcGroup& G, int s) {
  auto v = cache.get_or_compute(cache.key(G, "descendants", {{"s", s}}), [&] {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& D : descendants(G, s).groups) a.push_back(to_json(D));
    return a;
  });
  std::vector<PcGroup> out;
  for (const auto& g : v) out.push_back(pc_from_json(g));
  return out;
}

}  // namespace ptree
