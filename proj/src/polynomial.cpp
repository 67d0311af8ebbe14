#include "hallbasis/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace hallbasis {

IntPoly::IntPoly(std::vector<long long> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

i128 IntPoly::evaluate(i128 x) const {
  i128 r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    if (__builtin_mul_overflow(r, x, &r) || __builtin_add_overflow(r, static_cast<i128>(*it), &r)) {
      throw std::overflow_error("IntPoly::evaluate overflow");
    }
  }
  return r;
}

Laurent IntPoly::to_laurent(int q_exponent) const {
  Laurent r;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] != 0) r += Laurent::monomial(q_exponent * static_cast<int>(k), Cyclotomic(c_[k]));
  }
  return r;
}

std::optional<IntPoly> IntPoly::divide_exact(const IntPoly& d) const {
  if (d.is_zero()) return std::nullopt;
  if (is_zero()) return IntPoly();
  if (degree() < d.degree()) return std::nullopt;
  std::vector<long long> rem = c_;
  std::vector<long long> quot(c_.size() - d.c_.size() + 1, 0);
  long long lead = d.c_.back();
  for (int i = degree(); i >= d.degree(); --i) {
    if (rem[i] % lead != 0) return std::nullopt;
    long long f = rem[i] / lead;
    int shift = i - d.degree();
    quot[shift] = f;
    for (int j = 0; j <= d.degree(); ++j) rem[shift + j] -= f * d.c_[j];
  }
  for (long long r : rem) {
    if (r != 0) return std::nullopt;
  }
  return IntPoly(quot);
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<long long> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return IntPoly(c);
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<long long> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return IntPoly(c);
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<long long> c(a.c_.size() + b.c_.size() - 1, 0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return IntPoly(c);
}

std::string IntPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    long long c = c_[k];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    long long a = c < 0 ? -c : c;
    if (k == 0 || a != 1) os << a;
    if (k > 0) {
      if (a != 1) os << "*";
      os << "q";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

std::optional<IntPoly> interpolate(const std::vector<long long>& xs, const std::vector<i128>& ys) {
  const size_t n = xs.size();
  if (n != ys.size() || n == 0) throw std::invalid_argument("interpolate: bad sample sets");
  // Newton divided differences.
  std::vector<Rational> dd(n);
  for (size_t i = 0; i < n; ++i) dd[i] = Rational(ys[i], 1);
  for (size_t level = 1; level < n; ++level) {
    for (size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / Rational(xs[i] - xs[i - level]);
    }
  }
  // Expand the Newton form into monomial coefficients.
  std::vector<Rational> coeffs(1, dd[n - 1]);
  for (size_t i = n - 1; i-- > 0;) {
    std::vector<Rational> next(coeffs.size() + 1, Rational(0));
    for (size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] += coeffs[k];
      next[k] -= coeffs[k] * Rational(xs[i]);
    }
    next[0] += dd[i];
    coeffs = std::move(next);
  }
  std::vector<long long> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (c.den() != 1) return std::nullopt;
    out.push_back(static_cast<long long>(c.num()));
  }
  return IntPoly(out);
}

IntPoly gl_order(int m, int d) {
  // prod_{k=0}^{m-1} (Q^m - Q^k), Q = q^d
  IntPoly r = IntPoly::constant(1);
  for (int k = 0; k < m; ++k) {
    std::vector<long long> f(static_cast<size_t>(d) * m + 1, 0);
    f[static_cast<size_t>(d) * m] += 1;
    f[static_cast<size_t>(d) * k] -= 1;
    r = r * IntPoly(f);
  }
  return r;
}

bool is_prime_power(long long n, long long* p, int* k) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      if (n != 1) return false;
      if (p) *p = d;
      if (k) *k = e;
      return true;
    }
  }
  if (p) *p = n;
  if (k) *k = 1;
  return true;
}

const std::vector<long long>& prime_powers() {
  static const std::vector<long long> list = [] {
    std::vector<long long> v;
    for (long long n = 2; n <= 1024; ++n) {
      if (is_prime_power(n)) v.push_back(n);
    }
    return v;
  }();
  return list;
}

}  // namespace hallbasis
