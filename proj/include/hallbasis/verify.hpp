#pragma once

// Verification suites. Each check yields one line of deterministic text;
// suites are what `hallbasis verify` and the acceptance test run.

#include "hallbasis/bar_canonical.hpp"
#include "hallbasis/poly_cache.hpp"

#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace hallbasis {

struct CheckResult {
  int criterion = 0;  // 0 for checks outside the numbered list
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string format_result(const CheckResult& r);

/// Dimension vectors with sum_i weights_i nu_i in [1, max_total].
std::vector<DimVector> dims_up_to(const std::vector<int>& weights, int max_total);
/// Weighted by orbit sizes, i.e. bounded total unfolded dimension.
std::vector<DimVector> dims_up_to(const QuiverType& type, int max_total);

/// Dimension vectors covered by the bar and canonical-basis checks: total
/// unfolded dimension <= 4, and for G2 folded sum <= 3 with at most 2 classes.
std::vector<DimVector> bar_scope(const QuiverType& type);

/// Both bar routes and the canonical basis at one dimension vector.
struct BarData {
  OracleResult oracle;
  GsReport gs;
  CanonicalBasis cb;
};

/// Engines shared across suites, one per catalog type, all backed by `cache`.
class Workspace {
 public:
  /// Without a cache an in-memory one is used.
  explicit Workspace(PolyCache* cache = nullptr, int jobs = 1);
  const HallEngine& engine(const std::string& label);
  /// Memoized; exceptions from the underlying computations propagate.
  const BarData& bar(const std::string& label, const DimVector& nu);
  PolyCache* cache() const { return cache_; }
  int jobs() const { return jobs_; }

 private:
  std::unique_ptr<PolyCache> own_cache_;
  PolyCache* cache_;
  int jobs_;
  std::map<std::string, std::unique_ptr<HallEngine>> engines_;
  std::map<std::pair<std::string, DimVector>, std::unique_ptr<BarData>> bars_;
};

// Criterion checks.
CheckResult check_hall_existence(Workspace& ws);     // 1
CheckResult check_seed_counts(Workspace& ws);        // 2
CheckResult check_structure_constants(Workspace& ws);  // 3
CheckResult check_involutivity(Workspace& ws);       // 4
CheckResult check_corollary_properties(Workspace& ws);  // 5
CheckResult check_route_agreement(Workspace& ws);    // 6
CheckResult check_slice_identities(Workspace& ws);   // 7
CheckResult check_final_identity(Workspace& ws);     // 8
CheckResult check_folding();                         // 9
/// Re-evaluates a seeded 10% sample of the cache at a fresh prime power.
CheckResult check_cache(Workspace& ws, unsigned long long seed = 0);  // 10

/// Suites: "hall" (1, 2, 3, 9), "slice" (7), "bar" (4, 6),
/// "corollary" (5, 8), "all" (every criterion). Throws ParseError on an
/// unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite, Workspace& ws);

struct CacheVerifyReport {
  size_t checked = 0;
  size_t total = 0;
  std::vector<std::string> keys;
};

/// Picks ceil(10%) of the records with a seeded generator and recounts each at
/// the smallest prime power outside its samples and held-out points.
/// Throws CorruptCache naming the first mismatching key.
CacheVerifyReport verify_cache(const PolyCache& cache, Workspace& ws, unsigned long long seed = 0);

}  // namespace hallbasis
