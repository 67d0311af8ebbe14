#pragma once

// Species representations of a folded quiver over F_q.
//
// Vertex orbit i carries a vector space over K_i = F_{q^{s_i}}; an arrow
// orbit h: i -> j of size o_h carries a K_h-linear map
//   V_i (x)_{K_i} K_h -> V_j (x)_{K_j} K_h,  K_h = F_{q^{o_h}},
// stored as a dim_j x dim_i matrix. All fields live inside one ambient
// field E = F_{q^S}.

#include "hallbasis/finite_field.hpp"
#include "hallbasis/quiver.hpp"

#include <memory>
#include <random>
#include <vector>

namespace hallbasis {

class SpeciesContext {
 public:
  SpeciesContext(FoldedCartan cartan, long long q);

  const FoldedCartan& cartan() const { return cartan_; }
  long long q() const { return q_; }
  int ambient_degree() const { return S_; }
  const GaloisField& field() const { return *field_; }
  int vertex_degree(int i) const { return cartan_.orbit_sizes[i]; }
  int arrow_degree(int h) const { return cartan_.arrow_orbits[h].size; }

  /// Elements of F_{q^d}; cached.
  const std::vector<Elem>& elements(int d) const;
  /// x -> x^{q^k}.
  Elem frobenius(Elem x, int k) const;

 private:
  FoldedCartan cartan_;
  long long q_;
  int p_ = 0;
  int n_ = 0;
  int S_ = 1;
  std::shared_ptr<const GaloisField> field_;
  std::vector<std::vector<Elem>> elements_;  // indexed by d
};

struct SpeciesRep {
  DimVector dim;
  std::vector<FieldMatrix> maps;  // per arrow orbit, dim[tgt] x dim[src]
};

SpeciesRep zero_rep(const SpeciesContext& ctx, const DimVector& dim);
SpeciesRep direct_sum(const SpeciesRep& a, const SpeciesRep& b);
SpeciesRep random_rep(const SpeciesContext& ctx, const DimVector& dim, std::mt19937_64& rng);

/// dim_{F_q} Hom(X, Y), computed as the E-dimension of Hom between the
/// base changes to E (the unfolded representations).
int hom_dim(const SpeciesContext& ctx, const SpeciesRep& x, const SpeciesRep& y);

/// Rank over the ambient field.
int rank(const GaloisField& f, FieldMatrix m);

/// Row-reduced echelon form in place; returns pivot columns.
std::vector<int> rref(const GaloisField& f, FieldMatrix& m);

}  // namespace hallbasis
