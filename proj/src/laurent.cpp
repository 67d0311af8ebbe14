#include "hallbasis/laurent.hpp"

#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hallbasis {

std::string to_string(i128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1
                            : static_cast<unsigned __int128>(x);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

namespace {

constexpr i128 kLimit = static_cast<i128>(1) << 120;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r) || r > kLimit || r < -kLimit) {
    throw std::overflow_error("Rational: 128-bit overflow");
  }
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r) || r > kLimit || r < -kLimit) {
    throw std::overflow_error("Rational: 128-bit overflow");
  }
  return r;
}

}  // namespace

Rational::Rational(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = n;
  den_ = d;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return {checked_add(a.num_, b.num_), a.den_};
  i128 g = gcd128(a.den_, b.den_);
  i128 da = a.den_ / g;
  i128 db = b.den_ / g;
  return {checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)), checked_mul(a.den_, db)};
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  i128 g1 = gcd128(a.num_, b.den_);
  i128 g2 = gcd128(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return {checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1)};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

QuadSurd::QuadSurd(Rational a, Rational b, long long d) : a_(a), b_(b), d_(d) {
  // A perfect-square radicand is folded into the rational part.
  long long r = 0;
  while ((r + 1) * (r + 1) <= d) ++r;
  if (d > 1 && r * r == d) {
    a_ = a_ + b_ * Rational(r);
    b_ = Rational(0);
  }
}

QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
  return {x.a_ + y.a_, x.b_ + y.b_, x.d_ != 1 ? x.d_ : y.d_};
}

QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) {
  return {x.a_ - y.a_, x.b_ - y.b_, x.d_ != 1 ? x.d_ : y.d_};
}

QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
  long long d = x.d_ != 1 ? x.d_ : y.d_;
  return {x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d};
}

QuadSurd QuadSurd::inverse() const {
  Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
  if (norm.is_zero()) throw std::domain_error("QuadSurd: non-invertible");
  return {a_ / norm, -b_ / norm, d_};
}

QuadSurd QuadSurd::pow(int k) const {
  QuadSurd base = k < 0 ? inverse() : *this;
  int e = k < 0 ? -k : k;
  QuadSurd r = integer(1, d_);
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

std::string QuadSurd::str() const {
  if (b_.is_zero()) return a_.str();
  std::string s = a_.is_zero() ? "" : a_.str() + " + ";
  return s + "(" + b_.str() + ")*sqrt(" + std::to_string(d_) + ")";
}

// ---------------------------------------------------------------------------
// Cyclotomic integers

namespace {

std::vector<long long> poly_divide_exact(std::vector<long long> num, const std::vector<long long>& den) {
  // den monic
  std::vector<long long> quot(num.size() - den.size() + 1, 0);
  for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
    long long c = num[i];
    int shift = i - static_cast<int>(den.size()) + 1;
    quot[shift] = c;
    for (size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
  }
  return quot;
}


}  // namespace

const std::vector<long long>& cyclotomic_polynomial(int order) {
  static std::mutex mu;
  static std::map<int, std::vector<long long>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  std::vector<long long> p(order + 1, 0);
  p[0] = -1;
  p[order] = 1;
  for (int d = 1; d < order; ++d) {
    if (order % d != 0) continue;
    // recursion through the cache without re-locking
    std::vector<long long> phi_d;
    auto jt = cache.find(d);
    if (jt == cache.end()) {
      // build bottom-up
      std::vector<long long> q(d + 1, 0);
      q[0] = -1;
      q[d] = 1;
      for (int e = 1; e < d; ++e) {
        if (d % e == 0) q = poly_divide_exact(q, cache.at(e));
      }
      cache[d] = q;
      phi_d = q;
    } else {
      phi_d = jt->second;
    }
    p = poly_divide_exact(p, phi_d);
  }
  return cache[order] = p;
}

Cyclotomic::Cyclotomic(int order, std::vector<long long> coords) : order_(order), coords_(std::move(coords)) {
  if (order < 1) throw std::invalid_argument("Cyclotomic: order must be positive");
  normalize();
}

Cyclotomic Cyclotomic::root_power(int order, int k) {
  k %= order;
  if (k < 0) k += order;
  std::vector<long long> c(k + 1, 0);
  c[k] = 1;
  return {order, c};
}

void Cyclotomic::normalize() {
  const auto& phi = cyclotomic_polynomial(order_);
  int deg = static_cast<int>(phi.size()) - 1;
  for (int i = static_cast<int>(coords_.size()) - 1; i >= deg; --i) {
    long long c = coords_[i];
    if (c == 0) continue;
    int shift = i - deg;
    for (int j = 0; j <= deg; ++j) coords_[shift + j] -= c * phi[j];
  }
  coords_.resize(std::max(deg, 1), 0);
  if (is_integer() && order_ != 1) {
    long long c = coords_[0];
    order_ = 1;
    coords_.assign(1, c);
  }
}

bool Cyclotomic::is_zero() const {
  for (long long c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_integer() const {
  for (size_t i = 1; i < coords_.size(); ++i) {
    if (coords_[i] != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_unit_monomial() const { return unit_inverse().has_value(); }

std::optional<Cyclotomic> Cyclotomic::unit_inverse() const {
  for (int sign : {1, -1}) {
    for (int k = 0; k < order_; ++k) {
      Cyclotomic cand = root_power(order_, k) * Cyclotomic(sign);
      if (cand == *this) return root_power(order_, order_ - k) * Cyclotomic(sign);
    }
  }
  return std::nullopt;
}

Cyclotomic Cyclotomic::lifted(int order) const {
  if (order == order_) return *this;
  if (order % order_ != 0) throw std::invalid_argument("Cyclotomic: lift to non-multiple order");
  int step = order / order_;
  std::vector<long long> c(static_cast<size_t>(step) * coords_.size() + 1, 0);
  for (size_t k = 0; k < coords_.size(); ++k) c[k * step] += coords_[k];
  return {order, c};
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

namespace {
int common_order(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_integer()) return b.order();
  if (b.is_integer()) return a.order();
  return std::lcm(a.order(), b.order());
}

Cyclotomic lift_any(const Cyclotomic& a, int order) {
  if (a.is_integer()) {
    std::vector<long long> c{a.integer_part()};
    return {order, c};
  }
  return a.lifted(order);
}
}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  int o = common_order(a, b);
  Cyclotomic x = lift_any(a, o);
  Cyclotomic y = lift_any(b, o);
  std::vector<long long> c(std::max(x.coords_.size(), y.coords_.size()), 0);
  for (size_t i = 0; i < x.coords_.size(); ++i) c[i] += x.coords_[i];
  for (size_t i = 0; i < y.coords_.size(); ++i) c[i] += y.coords_[i];
  return {o, c};
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_integer() && b.is_integer()) return Cyclotomic(a.integer_part() * b.integer_part());
  int o = common_order(a, b);
  Cyclotomic x = lift_any(a, o);
  Cyclotomic y = lift_any(b, o);
  std::vector<long long> c(x.coords_.size() + y.coords_.size(), 0);
  for (size_t i = 0; i < x.coords_.size(); ++i) {
    for (size_t j = 0; j < y.coords_.size(); ++j) c[i + j] += x.coords_[i] * y.coords_[j];
  }
  return {o, c};
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_integer() && b.is_integer()) return a.integer_part() == b.integer_part();
  return (a - b).is_zero();
}

std::string Cyclotomic::str() const {
  if (is_integer()) return std::to_string(integer_part());
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k] == 0) continue;
    if (!first) os << (coords_[k] > 0 ? "+" : "");
    os << coords_[k];
    if (k > 0) os << "w" << (k > 1 ? "^" + std::to_string(k) : "");
    first = false;
  }
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Laurent polynomials

Laurent::Laurent(long long c) {
  if (c != 0) terms_.emplace(0, Cyclotomic(c));
}

Laurent::Laurent(const Cyclotomic& c) {
  if (!c.is_zero()) terms_.emplace(0, c);
}

Laurent Laurent::monomial(int exponent, Cyclotomic coeff) {
  Laurent r;
  if (!coeff.is_zero()) r.terms_.emplace(exponent, coeff);
  return r;
}

Laurent Laurent::from_coeffs(int low, const std::vector<long long>& coeffs) {
  Laurent r;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) r.terms_.emplace(low + static_cast<int>(i), Cyclotomic(coeffs[i]));
  }
  return r;
}

Cyclotomic Laurent::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Cyclotomic(0) : it->second;
}

int Laurent::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int Laurent::max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

bool Laurent::has_omega() const {
  for (const auto& [e, c] : terms_) {
    if (!c.is_integer()) return true;
  }
  return false;
}

bool Laurent::is_unit() const { return terms_.size() == 1 && terms_.begin()->second.is_unit_monomial(); }

Laurent Laurent::bar() const {
  Laurent r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
  return r;
}

Laurent Laurent::shifted(int k) const {
  Laurent r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
  return r;
}

Laurent Laurent::positive_part() const {
  Laurent r;
  for (const auto& [e, c] : terms_) {
    if (e > 0) r.terms_.emplace(e, c);
  }
  return r;
}

std::optional<Laurent> Laurent::divide_exact(const Laurent& d) const {
  if (d.is_zero()) return std::nullopt;
  if (is_zero()) return Laurent();
  int lead_exp = d.max_exponent();
  auto lead_inv = d.terms_.rbegin()->second.unit_inverse();
  Laurent rem = *this;
  Laurent quot;
  const int span = d.max_exponent() - d.min_exponent();
  int guard = 0;
  while (!rem.is_zero()) {
    if (++guard > 100000) return std::nullopt;
    if (rem.max_exponent() - rem.min_exponent() < span) return std::nullopt;
    int e = rem.max_exponent() - lead_exp;
    Cyclotomic c = rem.terms_.rbegin()->second;
    Cyclotomic qc;
    if (lead_inv) {
      qc = c * *lead_inv;
    } else {
      // integer leading coefficient dividing integer coefficient
      const Cyclotomic& lc = d.terms_.rbegin()->second;
      if (!lc.is_integer() || !c.is_integer()) return std::nullopt;
      if (c.integer_part() % lc.integer_part() != 0) return std::nullopt;
      qc = Cyclotomic(c.integer_part() / lc.integer_part());
    }
    Laurent step = monomial(e, qc);
    quot += step;
    rem -= step * d;
  }
  return quot;
}

std::vector<QuadSurd> Laurent::evaluate(const QuadSurd& x) const {
  size_t width = 1;
  for (const auto& [e, c] : terms_) width = std::max(width, c.coords().size());
  int order = 1;
  for (const auto& [e, c] : terms_) order = std::lcm(order, c.is_integer() ? 1 : c.order());
  std::vector<QuadSurd> out;
  for (const auto& [e, c] : terms_) {
    Cyclotomic lc = c.is_integer() ? c : c.lifted(order);
    QuadSurd xe = x.pow(e);
    if (out.size() < lc.coords().size()) out.resize(lc.coords().size(), QuadSurd::integer(0, x.radicand()));
    for (size_t k = 0; k < lc.coords().size(); ++k) {
      out[k] = out[k] + QuadSurd::integer(lc.coords()[k], x.radicand()) * xe;
    }
  }
  if (out.empty()) out.push_back(QuadSurd::integer(0, x.radicand()));
  return out;
}

Laurent Laurent::operator-() const {
  Laurent r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent& Laurent::operator*=(const Laurent& o) { return *this = *this * o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      r += Laurent::monomial(ea + eb, ca * cb);
    }
  }
  return r;
}

bool operator==(const Laurent& a, const Laurent& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [e, c] : a.terms_) {
    if (it->first != e || !(it->second == c)) return false;
    ++it;
  }
  return true;
}

std::string Laurent::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string cs = c.str();
    bool negative = c.is_integer() && c.integer_part() < 0;
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << "-";
    if (negative) cs = cs.substr(1);
    bool unit = c.is_integer() && (c.integer_part() == 1 || c.integer_part() == -1);
    if (e == 0) {
      os << cs;
    } else {
      if (!unit) os << cs << "*";
      os << "v";
      if (e != 1) os << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Laurent& x) { return os << x.str(); }

LaurentMatrix bar(const LaurentMatrix& m) {
  LaurentMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).bar();
  }
  return r;
}

LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  LaurentMatrix r = LaurentMatrix::Constant(a.rows(), b.cols(), Laurent());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return r;
}

bool is_identity(const LaurentMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != Laurent(i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

LaurentMatrix unitriangular_inverse(const LaurentMatrix& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("unitriangular_inverse: not square");
  bool lower = true;
  bool upper = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (m(i, i) != Laurent(1)) throw std::invalid_argument("unitriangular_inverse: diagonal not 1");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j > i && !m(i, j).is_zero()) lower = false;
      if (j < i && !m(i, j).is_zero()) upper = false;
    }
  }
  if (!lower && !upper) throw std::invalid_argument("unitriangular_inverse: not triangular");
  // Solve m * x = I column by column via substitution in the right direction.
  LaurentMatrix inv = LaurentMatrix::Constant(n, n, Laurent());
  for (Eigen::Index c = 0; c < n; ++c) {
    if (lower) {
      for (Eigen::Index i = 0; i < n; ++i) {
        Laurent s(i == c ? 1 : 0);
        for (Eigen::Index k = 0; k < i; ++k) {
          if (!m(i, k).is_zero()) s -= m(i, k) * inv(k, c);
        }
        inv(i, c) = s;
      }
    } else {
      for (Eigen::Index i = n - 1; i >= 0; --i) {
        Laurent s(i == c ? 1 : 0);
        for (Eigen::Index k = i + 1; k < n; ++k) {
          if (!m(i, k).is_zero()) s -= m(i, k) * inv(k, c);
        }
        inv(i, c) = s;
      }
    }
  }
  return inv;
}

}  // namespace hallbasis
