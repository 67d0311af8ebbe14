#pragma once

// Bar involution on the PBW basis (two routes), the bar-fixed canonical
// basis and the identities relating them.
//
// Matrices are indexed by the classes of one dimension vector in a linear
// extension of the degeneration order. Row l of R holds bar(pbw_l) in
// PBW coordinates; row l of P holds b_l in PBW coordinates.

#include "hallbasis/hall_algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hallbasis {

struct TransitionMatrix {
  char role = 'R';  // 'R', 'P' or 'Q'
  std::vector<ModuleClass> classes;
  LaurentMatrix m;

  int index_of(const ModuleClass& c) const;
  const Laurent& at(const ModuleClass& row, const ModuleClass& col) const;
};

struct OracleResult {
  TransitionMatrix r;
  Twist twist = Twist::Geometric;
  /// bar on the u-basis: bar(u_l) = sum_m ru(l, m) u_m.
  LaurentMatrix u_matrix;
  /// Why each earlier twist was rejected.
  std::vector<std::string> rejected;
};

struct TwistSelection {
  Twist twist = Twist::Geometric;
  std::vector<std::string> rejected;
};

/// First twist in the order Standard, Euler, Geometric whose bar matrices are
/// unitriangular involutions on the probes e_i + e_j (arrow orbits) and 2e_i.
TwistSelection select_twist(const HallEngine& engine);

/// Bar matrix from monomials in the bar-fixed generators u_{aS_i}, using the
/// twist chosen by select_twist.
OracleResult bar_matrix_oracle(const HallEngine& engine, const DimVector& nu, bool reverse_ties = false);

/// Same elimination for one fixed twist. Throws EliminationFailed.
OracleResult bar_matrix_oracle(const HallEngine& engine, const DimVector& nu, Twist twist, bool reverse_ties);

/// X_{MN} = F^M_{N_1..N_m}(q) prod a_{N_i}(q) / a_M(q) as a polynomial in q.
/// Throws NonLaurentEntry when the division is not exact.
IntPoly gs_ratio(const HallEngine& engine, const ModuleClass& M, const ModuleClass& N, FiltrationDirection d);

/// r_{MN} = v^{d_N - d_M} X_{MN}(v^2).
TransitionMatrix bar_matrix_gs(const HallEngine& engine, const DimVector& nu, FiltrationDirection d);

struct DirectionTrial {
  FiltrationDirection direction;
  bool ok = false;
  std::string failure;  // empty when ok
};

struct GsReport {
  FiltrationDirection chosen = FiltrationDirection::BottomFirst;
  bool tie = false;  // both directions agree with the oracle
  std::vector<DirectionTrial> trials;
  TransitionMatrix r;
};

enum class DirectionChoice { Auto, Top, Bottom };

/// Runs the requested direction(s) against the oracle. With Auto both are
/// tried and the agreeing one is chosen; throws IdentityFailed if none agrees.
GsReport select_direction(const HallEngine& engine, const DimVector& nu, const TransitionMatrix& oracle,
                          DirectionChoice choice = DirectionChoice::Auto);

struct CanonicalBasis {
  TransitionMatrix p;
  TransitionMatrix q;
};

/// Unique bar-fixed b_l = pbw_l + sum_{m < l} p_{lm} pbw_m with p_{lm} in vZ[w, v].
/// Throws NoSolution.
CanonicalBasis canonical_basis(const QuiverType& type, const TransitionMatrix& r);

/// Checks for a matrix with the given role. Each returns an empty string on
/// success, else a description of the first violation.
std::string check_involution(const TransitionMatrix& r);
std::string check_triangular(const QuiverType& type, const TransitionMatrix& m);
std::string check_corollary(const QuiverType& type, const CanonicalBasis& cb);
std::string check_bar_fixed(const TransitionMatrix& r, const CanonicalBasis& cb);
bool has_omega(const LaurentMatrix& m);

/// Equality of two matrices over the same classes (possibly permuted).
std::string compare_matrices(const TransitionMatrix& a, const TransitionMatrix& b);

/// bar(u_l) at v = -1/sqrt(q) against
///   (-sqrt q)^{-d_l} sum q_{ll'}(-sqrt q) p_{l'l''}(-1/sqrt q) (-sqrt q)^{-d_l''}.
/// Throws IdentityFailed naming the first mismatching pair.
void bar_pbw_identity(const QuiverType& type, const TransitionMatrix& r, const CanonicalBasis& cb, long long q);

/// Slice polynomial e_{MN}(q) = |E_N cap O_M| certified over prime powers.
HallPolynomial slice_polynomial(const HallEngine& engine, const ModuleClass& M, const ModuleClass& N);

/// r_{MN} = v^{d_N - d_M} e_{MN}(v^2) for every entry. Throws IdentityFailed.
void slice_bar_check(const HallEngine& engine, const TransitionMatrix& r);

}  // namespace hallbasis
