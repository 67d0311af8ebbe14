#pragma once

// Twisted Hall algebra over Z[v, v^-1, w] on the basis u_lambda.

#include "hallbasis/hall_count.hpp"
#include "hallbasis/laurent.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace hallbasis {

/// Exponent of v in u_{l'} o u_{l''} = v^{e} sum g(v^-2) u_l:
///   Standard:  e = -A(nu', nu'')
///   Euler:     e = <nu', nu''>
///   Geometric: e = +A(nu', nu'')
enum class Twist { Standard, Euler, Geometric };

const char* twist_name(Twist t);

class AlgebraElement {
 public:
  AlgebraElement() = default;
  static AlgebraElement basis(const ModuleClass& m, Laurent c = Laurent(1));

  const std::map<ModuleClass, Laurent>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Laurent coeff(const ModuleClass& m) const;
  void add(const ModuleClass& m, const Laurent& c);

  AlgebraElement& operator+=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
  friend AlgebraElement operator*(const Laurent& c, const AlgebraElement& x);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }

 private:
  std::map<ModuleClass, Laurent> terms_;
};

class HallAlgebra {
 public:
  explicit HallAlgebra(const HallEngine& engine, Twist twist = Twist::Standard);

  const HallEngine& engine() const { return engine_; }
  const QuiverType& type() const { return engine_.type(); }
  Twist twist() const { return twist_; }

  int twist_exponent(const DimVector& a, const DimVector& b) const;
  AlgebraElement unit() const;
  AlgebraElement product(const ModuleClass& a, const ModuleClass& b) const;
  AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;
  /// PBW class [C_l, psi_l] = v^{orbit_dim(l)} u_l.
  AlgebraElement pbw_class(const ModuleClass& m) const;
  /// h^l_{l'l''} on PBW classes: v^{d'+d''-d+e} g^l_{l'l''}(v^-2); zero entries omitted.
  std::map<ModuleClass, Laurent> structure_constants(const ModuleClass& a, const ModuleClass& b) const;

  /// Rescales u_l by v^{sum_i s_i nu_i^2}: intertwines Standard and Euler twists.
  AlgebraElement standard_to_euler(const AlgebraElement& x) const;
  AlgebraElement euler_to_standard(const AlgebraElement& x) const;

 private:
  const HallEngine& engine_;
  Twist twist_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<ModuleClass, ModuleClass>, AlgebraElement> products_;
};

/// Hom order: l <= l' iff hom(X, M_l) >= hom(X, M_l') for every indecomposable X.
bool degeneration_leq(const QuiverType& type, const ModuleClass& a, const ModuleClass& b);

/// Linear extension of the degeneration order: by orbit dimension, ties by
/// multiplicity vector (reversed when `reverse_ties`).
std::vector<ModuleClass> linear_extension(const QuiverType& type, std::vector<ModuleClass> classes,
                                          bool reverse_ties = false);

}  // namespace hallbasis
