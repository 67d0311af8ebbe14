#pragma once

// Finite-field counting: Hall numbers, certified Hall polynomials,
// filtration counts and the slice / unipotent point counts.

#include "hallbasis/modules.hpp"
#include "hallbasis/polynomial.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hallbasis {

class PolyCache;

struct HallPolynomial {
  IntPoly poly;
  std::vector<long long> samples;
  std::vector<long long> heldout;
};

enum class FiltrationDirection { TopFirst, BottomFirst };

const char* direction_name(FiltrationDirection d);

/// Calls `visit(sub, quotient)` for every subrepresentation of `rep`
/// (optionally only those of dimension `sub_dim`). Subspaces are enumerated
/// in reduced row echelon form vertex by vertex.
void for_each_submodule(const SpeciesContext& ctx, const SpeciesRep& rep, const DimVector* sub_dim,
                        const std::function<void(const SpeciesRep&, const SpeciesRep&)>& visit);

/// Number of subrepresentations of dimension `sub_dim`.
long long count_submodules(const SpeciesContext& ctx, const SpeciesRep& rep, const DimVector& sub_dim);

/// Interpolates `count` over increasing prime-power samples (at most
/// cap + 1 of them) and accepts once kHeldOut further prime powers agree.
HallPolynomial certify_polynomial(const std::function<i128(long long)>& count, int cap, const std::string& what);

inline constexpr int kHeldOut = 3;

enum class SliceMode {
  Complement,  // x_N + (coordinate complement of phi(u) in n)
  Image,       // x_N + phi(u)
};

struct UnipotentCount {
  std::map<ModuleClass, i128> by_class;  // |Y_N cap O_M|
  i128 unipotent_order = 1;              // |U_nu|
};

class HallEngine {
 public:
  explicit HallEngine(std::shared_ptr<const QuiverType> type, PolyCache* cache = nullptr);

  const QuiverType& type() const { return *type_; }
  std::shared_ptr<const QuiverType> type_ptr() const { return type_; }
  PolyCache* cache() const { return cache_; }

  /// (M quotient, N sub) -> g^L_{MN}(q), over all N or those of dimension `sub_dim`.
  using Table = std::map<std::pair<ModuleClass, ModuleClass>, long long>;
  const Table& hall_table(const ModuleClass& L, long long q, const DimVector* sub_dim = nullptr) const;
  long long hall_number(const ModuleClass& L, const ModuleClass& M, const ModuleClass& N, long long q) const;
  HallPolynomial hall_polynomial(const ModuleClass& L, const ModuleClass& M, const ModuleClass& N) const;
  /// Dimension of the product of Grassmannians containing all submodules.
  int degree_cap(const DimVector& l, const DimVector& n) const;
  std::string cache_key(const ModuleClass& L, const ModuleClass& M, const ModuleClass& N) const;

  /// Isotypic components of N in directed order (zero layers included).
  std::vector<ModuleClass> isotypic_layers(const ModuleClass& N) const;
  /// F^M_{N_1..N_m}; `direction` says whether N_1 is the top quotient or the bottom submodule.
  HallPolynomial filtration_polynomial(const ModuleClass& M, const std::vector<ModuleClass>& layers,
                                       FiltrationDirection direction) const;
  /// Direct enumeration of filtrations of an explicit realization of M.
  long long filtration_count_direct(const ModuleClass& M, const std::vector<ModuleClass>& layers,
                                    FiltrationDirection direction, long long q) const;

  /// |E_N cap O_M| for every M.
  std::map<ModuleClass, i128> slice_table(const ModuleClass& N, long long q, SliceMode mode = SliceMode::Complement) const;
  i128 slice_count(const ModuleClass& N, const ModuleClass& M, long long q, SliceMode mode = SliceMode::Complement) const;
  UnipotentCount unipotent_table(const ModuleClass& N, long long q) const;
  /// dim u_nu = sum_i s_i sum_{a<b} nu^(a)_i nu^(b)_i over the layers of N.
  int unipotent_dim(const ModuleClass& N) const;

  /// Computes hall tables for every (L, q) pair with a worker pool.
  void prefetch(const std::vector<ModuleClass>& ls, const std::vector<long long>& qs, int jobs) const;

 private:
  void validate_layers(const std::vector<ModuleClass>& layers) const;

  std::shared_ptr<const QuiverType> type_;
  PolyCache* cache_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<ModuleClass, DimVector, long long>, std::unique_ptr<Table>> tables_;
  mutable std::map<std::string, HallPolynomial> polys_;
};

}  // namespace hallbasis
