#include "hallbasis/poly_cache.hpp"

#include "hallbasis/error.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace hallbasis {

std::string to_json_line(const CacheRecord& r) {
  nlohmann::ordered_json j;
  j["key"] = r.key;
  j["coeffs"] = r.coeffs;
  j["samples"] = r.samples;
  j["heldout"] = r.heldout;
  return j.dump();
}

CacheRecord record_from_json_line(const std::string& line) {
  try {
    auto j = nlohmann::json::parse(line);
    CacheRecord r;
    r.key = j.at("key").get<std::string>();
    r.coeffs = j.at("coeffs").get<std::vector<long long>>();
    r.samples = j.value("samples", std::vector<long long>{});
    r.heldout = j.value("heldout", std::vector<long long>{});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::CorruptCache, std::string("unreadable cache line: ") + e.what());
  }
}

PolyCache::PolyCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CacheRecord r = record_from_json_line(line);
    records_.emplace(r.key, r);  // first record for a key wins
  }
}

std::optional<CacheRecord> PolyCache::get(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void PolyCache::put(const CacheRecord& r) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!records_.emplace(r.key, r).second) return;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  out << to_json_line(r) << '\n';
}

std::vector<CacheRecord> PolyCache::records() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<CacheRecord> out;
  for (const auto& [k, r] : records_) out.push_back(r);
  return out;
}

size_t PolyCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

void PolyCache::compact() {
  std::lock_guard<std::mutex> lock(mu_);
  if (path_.empty()) return;
  const std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (const auto& [k, r] : records_) out << to_json_line(r) << '\n';
  }
  std::filesystem::rename(tmp, path_);
}

}  // namespace hallbasis
