#pragma once

// Quivers with admissible automorphisms and their folded Cartan data.

#include <Eigen/Core>

#include <string>
#include <vector>

namespace hallbasis {

struct Arrow {
  std::string id;
  int src = 0;
  int tgt = 0;
};

/// Unfolded datum (I, Omega, a). Vertices are 0..n-1 internally; `vertex_names`
/// keeps the labels used for input and output.
struct QuiverWithAutomorphism {
  std::string label;
  std::vector<std::string> vertex_names;
  std::vector<Arrow> arrows;
  std::vector<int> vertex_perm;
  std::vector<int> arrow_perm;
  int period = 0;  // 0: the order of the automorphism

  int num_vertices() const { return static_cast<int>(vertex_names.size()); }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

ValidationReport validate_admissible(const QuiverWithAutomorphism& q);

struct ArrowOrbit {
  int src = 0;  // folded index
  int tgt = 0;
  int size = 1;
  std::vector<int> arrows;
};

struct FoldedCartan {
  std::vector<std::vector<int>> orbits;  // sorted by smallest member
  std::vector<int> orbit_of;
  Eigen::MatrixXi cartan;
  std::vector<int> orbit_sizes;
  std::vector<ArrowOrbit> arrow_orbits;
  std::string type_label;
  int automorphism_order = 1;

  int rank() const { return static_cast<int>(orbits.size()); }
};

FoldedCartan fold(const QuiverWithAutomorphism& q);

/// Folded coordinates over I'.
using DimVector = std::vector<int>;

std::vector<int> unfold(const FoldedCartan& c, const DimVector& nu);

/// A(nu', nu'') = sum_i nu'_i nu''_i + sum_{h in Omega} nu'_{s(h)} nu''_{t(h)}
/// on the unfolded quiver.
int twist_exponent(const QuiverWithAutomorphism& q, const FoldedCartan& c, const DimVector& a,
                   const DimVector& b);

/// Classification string of a finite-type symmetrizable Cartan matrix.
std::string classify_cartan(const Eigen::MatrixXi& cartan, const std::vector<int>& sym);

QuiverWithAutomorphism catalog(const std::string& label);
std::vector<std::string> catalog_labels();

}  // namespace hallbasis
