#pragma once

// Integer polynomials in q, exact interpolation over prime powers.

#include "hallbasis/laurent.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hallbasis {

class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<long long> coeffs);  // low degree first
  static IntPoly constant(long long c) { return IntPoly(std::vector<long long>{c}); }
  static IntPoly q() { return IntPoly(std::vector<long long>{0, 1}); }

  const std::vector<long long>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  long long coeff(int k) const { return k < static_cast<int>(c_.size()) && k >= 0 ? c_[k] : 0; }

  i128 evaluate(i128 x) const;
  /// Substitutes q = v^{q_exponent}.
  Laurent to_laurent(int q_exponent) const;
  std::optional<IntPoly> divide_exact(const IntPoly& d) const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  std::string str() const;

 private:
  void trim();
  std::vector<long long> c_;
};

/// Unique polynomial of degree < xs.size() through the points, if it has
/// integer coefficients.
std::optional<IntPoly> interpolate(const std::vector<long long>& xs, const std::vector<i128>& ys);

/// |GL_m(F_{q^d})| as a polynomial in q.
IntPoly gl_order(int m, int d);

/// Prime powers in ascending order: 2, 3, 4, 5, 7, 8, 9, 11, ...
const std::vector<long long>& prime_powers();
bool is_prime_power(long long n, long long* p = nullptr, int* k = nullptr);

}  // namespace hallbasis
