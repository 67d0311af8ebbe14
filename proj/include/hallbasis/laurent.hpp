#pragma once

// Exact scalars: rationals, the quadratic field Q(sqrt d), cyclotomic
// integers Z[w] and Laurent polynomials over them.
//
// Laurent is registered with Eigen through NumTraits so that transition
// matrices are plain Eigen::Matrix<Laurent, Dynamic, Dynamic> values.

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hallbasis {

using i128 = __int128;

std::string to_string(i128 x);

/// Exact rational with 128-bit numerator/denominator. Throws on overflow.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(i128 n, i128 d);

  i128 num() const { return num_; }
  i128 den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Rational operator-() const { return {-num_, den_}; }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  std::string str() const;

 private:
  i128 num_ = 0;
  i128 den_ = 1;
};

/// a + b*sqrt(d) with rational a, b and a fixed radicand d.
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(Rational a, Rational b, long long d);
  static QuadSurd integer(long long n, long long d) { return {Rational(n), Rational(0), d}; }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  long long radicand() const { return d_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y);
  friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y);
  friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y);
  QuadSurd inverse() const;
  QuadSurd pow(int k) const;
  friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  std::string str() const;

 private:
  Rational a_;
  Rational b_;
  long long d_ = 1;
};

/// Element of Z[w], w a formal primitive o-th root of unity, stored in the
/// power basis 1, w, ..., w^{phi(o)-1}. Elements of different orders are
/// combined in the cyclotomic field of the lcm order.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long long n) : coords_{n} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(int order, std::vector<long long> coords);
  /// w^k in Z[w] of the given order.
  static Cyclotomic root_power(int order, int k);

  int order() const { return order_; }
  const std::vector<long long>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_integer() const;
  long long integer_part() const { return coords_.empty() ? 0 : coords_[0]; }
  /// true iff the value is +-w^k.
  bool is_unit_monomial() const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  std::string str() const;

  /// Re-expresses the element in Z[w'] with w' of order `order` (a multiple).
  Cyclotomic lifted(int order) const;
  /// Inverse of a unit monomial +-w^k; nullopt otherwise.
  std::optional<Cyclotomic> unit_inverse() const;

 private:
  void normalize();
  int order_ = 1;
  std::vector<long long> coords_{0};
};

/// Minimal polynomial of a primitive o-th root of unity, low degree first.
const std::vector<long long>& cyclotomic_polynomial(int order);

/// Finitely supported sum of c_k v^k with c_k in Z[w].
class Laurent {
 public:
  Laurent() = default;
  Laurent(long long c);  // NOLINT(google-explicit-constructor)
  Laurent(const Cyclotomic& c);  // NOLINT(google-explicit-constructor)
  static Laurent monomial(int exponent, Cyclotomic coeff = Cyclotomic(1));
  /// Builds sum coeffs[i] v^{low + i}.
  static Laurent from_coeffs(int low, const std::vector<long long>& coeffs);

  const std::map<int, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Cyclotomic coeff(int exponent) const;
  int min_exponent() const;
  int max_exponent() const;
  bool has_omega() const;
  bool is_unit() const;  // +-w^j v^k

  Laurent bar() const;
  Laurent shifted(int k) const;  // v^k * this
  /// Exact quotient when it exists as a Laurent polynomial. The divisor's
  /// leading coefficient must be a unit monomial or an integer.
  std::optional<Laurent> divide_exact(const Laurent& d) const;
  /// Terms with positive exponent only.
  Laurent positive_part() const;
  /// Evaluate at v = x; returns one value per w-coordinate.
  std::vector<QuadSurd> evaluate(const QuadSurd& x) const;

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b);
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  std::string str() const;

 private:
  std::map<int, Cyclotomic> terms_;
};

std::ostream& operator<<(std::ostream& os, const Laurent& x);

using LaurentMatrix = Eigen::Matrix<Laurent, Eigen::Dynamic, Eigen::Dynamic>;
using LaurentVector = Eigen::Matrix<Laurent, Eigen::Dynamic, 1>;

/// Entrywise bar.
LaurentMatrix bar(const LaurentMatrix& m);
/// Exact matrix product (avoids relying on Eigen's kernels for non-field scalars).
LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b);
bool is_identity(const LaurentMatrix& m);
/// Inverse of a unitriangular matrix (upper or lower); throws otherwise.
LaurentMatrix unitriangular_inverse(const LaurentMatrix& m);

}  // namespace hallbasis

namespace Eigen {
template <>
struct NumTraits<hallbasis::Laurent> : GenericNumTraits<hallbasis::Laurent> {
  using Real = hallbasis::Laurent;
  using NonInteger = hallbasis::Laurent;
  using Nested = hallbasis::Laurent;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
