#pragma once

// Positive roots, indecomposables, hom tables and module classes of a
// folded Dynkin quiver.

#include "hallbasis/polynomial.hpp"
#include "hallbasis/quiver.hpp"
#include "hallbasis/species.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace hallbasis {

struct Root {
  DimVector coords;
  int end_dim = 1;  // degree over F_q of the endomorphism field of I_t
  std::string name;
};

/// Isomorphism class: multiplicities over the roots in directed order.
struct ModuleClass {
  std::vector<int> mult;
  DimVector dim;

  friend bool operator==(const ModuleClass& a, const ModuleClass& b) { return a.mult == b.mult; }
  friend bool operator<(const ModuleClass& a, const ModuleClass& b) { return a.mult < b.mult; }
};

/// Positive roots by reflection closure, in lexicographic order.
std::vector<DimVector> positive_roots(const FoldedCartan& c);

class QuiverType {
 public:
  explicit QuiverType(QuiverWithAutomorphism q);
  /// Shared instance for a catalog label.
  static std::shared_ptr<const QuiverType> get(const std::string& label);

  const QuiverWithAutomorphism& quiver() const { return quiver_; }
  const FoldedCartan& cartan() const { return cartan_; }
  const std::string& label() const { return quiver_.label; }
  int rank() const { return cartan_.rank(); }

  /// Roots in directed order: Hom(I_s, I_t) = 0 for s > t.
  const std::vector<Root>& roots() const { return roots_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int hom(int s, int t) const { return hom_(s, t); }
  const Eigen::MatrixXi& hom_table() const { return hom_; }

  /// <a, b> = sum s_i a_i b_i - sum_h o_h a_{s(h)} b_{t(h)}.
  int euler(const DimVector& a, const DimVector& b) const;

  ModuleClass zero() const;
  ModuleClass indecomposable(int t, int mult = 1) const;
  ModuleClass sum(const ModuleClass& a, const ModuleClass& b) const;
  std::vector<ModuleClass> enumerate_modules(const DimVector& nu) const;

  int hom_dim(const ModuleClass& m, const ModuleClass& n) const;
  int end_dim(const ModuleClass& m) const { return hom_dim(m, m); }
  int orbit_dim(const ModuleClass& m) const;
  /// sum_i s_i nu_i^2: dimension of the group G_nu.
  int group_dim(const DimVector& nu) const;
  IntPoly aut_poly(const ModuleClass& m) const;
  i128 aut_order(const ModuleClass& m, long long q) const { return aut_poly(m).evaluate(q); }

  std::string name(const ModuleClass& m) const;
  ModuleClass parse(const std::string& text) const;

  /// Species context for F_q (shared, created on demand).
  const SpeciesContext& context(long long q) const;
  /// Explicit indecomposable I_t over F_q, certified rigid.
  const SpeciesRep& realize_indecomposable(int t, long long q) const;
  SpeciesRep realize(const ModuleClass& m, long long q) const;
  /// Iso class of an explicit representation via hom(I_t, -) for all t.
  ModuleClass classify(const SpeciesContext& ctx, const SpeciesRep& x) const;

 private:
  SpeciesRep realize_root(const SpeciesContext& ctx, const DimVector& root, int end_dim) const;

  QuiverWithAutomorphism quiver_;
  FoldedCartan cartan_;
  std::vector<Root> roots_;
  Eigen::MatrixXi hom_;

  mutable std::mutex mu_;
  mutable std::map<long long, std::unique_ptr<SpeciesContext>> contexts_;
  mutable std::map<std::pair<int, long long>, std::unique_ptr<SpeciesRep>> reps_;
};

}  // namespace hallbasis
