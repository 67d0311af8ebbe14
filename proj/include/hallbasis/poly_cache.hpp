#pragma once

// Append-only JSON-lines store of certified polynomials.
//   {"key": "type|L|M|N", "coeffs": [...], "samples": [...], "heldout": [...]}

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hallbasis {

struct CacheRecord {
  std::string key;
  std::vector<long long> coeffs;
  std::vector<long long> samples;
  std::vector<long long> heldout;
};

std::string to_json_line(const CacheRecord& r);
CacheRecord record_from_json_line(const std::string& line);

class PolyCache {
 public:
  /// Empty path: in-memory only.
  explicit PolyCache(std::string path = {});

  const std::string& path() const { return path_; }
  std::optional<CacheRecord> get(const std::string& key) const;
  /// Stores and appends a record; existing keys are left unchanged.
  void put(const CacheRecord& r);
  std::vector<CacheRecord> records() const;
  size_t size() const;
  /// Rewrites the file with one record per key, sorted by key.
  void compact();

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::string, CacheRecord> records_;
};

}  // namespace hallbasis
