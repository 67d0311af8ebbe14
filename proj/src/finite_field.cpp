#include "hallbasis/finite_field.hpp"

#include "hallbasis/error.hpp"

#include <map>
#include <mutex>

namespace hallbasis {

namespace {

constexpr long long kMaxFieldSize = 1LL << 21;

// Multiplies the encoded element by x modulo the monic polynomial f.
Elem times_x(Elem a, int p, int n, const std::vector<int>& f, const std::vector<Elem>& pw) {
  int top = static_cast<int>((a / pw[n - 1]) % p);
  Elem shifted = (a % pw[n - 1]) * p;
  if (top == 0) return shifted;
  // subtract top * f(x) (without leading term) digitwise
  Elem out = 0;
  for (int k = 0; k < n; ++k) {
    int d = static_cast<int>((shifted / pw[k]) % p);
    d = ((d - top * f[k]) % p + p) % p;
    out += static_cast<Elem>(d) * pw[k];
  }
  return out;
}

}  // namespace

GaloisField::GaloisField(int p, int degree) : p_(p), n_(degree) {
  long long size = 1;
  for (int k = 0; k < degree; ++k) {
    size *= p;
    if (size > kMaxFieldSize) throw Error(ErrorKind::UnsupportedFieldSize, "field too large");
  }
  if (p < 2 || degree < 1) throw Error(ErrorKind::UnsupportedFieldSize, "bad field parameters");
  q_ = static_cast<Elem>(size);
  pow_p_.resize(n_ + 1);
  pow_p_[0] = 1;
  for (int k = 1; k <= n_; ++k) pow_p_[k] = pow_p_[k - 1] * p_;

  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  // Search monic polynomials of degree n in lexicographic order for a primitive one.
  std::vector<int> f(n_ + 1, 0);
  f[n_] = 1;
  for (Elem code = 0; code < q_; ++code) {
    Elem c = code;
    for (int k = 0; k < n_; ++k) {
      f[k] = static_cast<int>(c % p_);
      c /= p_;
    }
    if (f[0] == 0) continue;
    std::vector<bool> hit(q_, false);
    Elem e = 1;
    bool ok = true;
    for (Elem k = 0; k < q_ - 1; ++k) {
      if (hit[e] || e == 0) {
        ok = false;
        break;
      }
      hit[e] = true;
      exp_[k] = e;
      log_[e] = k;
      e = n_ == 1 ? static_cast<Elem>((static_cast<long long>(e) * ((p_ - f[0]) % p_)) % p_)
                  : times_x(e, p_, n_, f, pow_p_);
    }
    if (ok && e == 1) {
      modulus_ = f;
      break;
    }
  }
  if (modulus_.empty()) throw Error(ErrorKind::UnsupportedFieldSize, "no primitive polynomial found");

  if (p_ != 2) {
    zech_.assign(q_ - 1, -1);
    for (Elem k = 0; k < q_ - 1; ++k) {
      Elem s = 0;
      Elem a = exp_[k];
      for (int j = 0; j < n_; ++j) {
        int d = static_cast<int>((a / pow_p_[j]) % p_);
        if (j == 0) d = (d + 1) % p_;
        s += static_cast<Elem>(d) * pow_p_[j];
      }
      zech_[k] = s == 0 ? -1 : static_cast<std::int64_t>(log_[s]);
    }
  }
}

std::shared_ptr<const GaloisField> GaloisField::get(int p, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const GaloisField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, degree}];
  if (!slot) slot = std::make_shared<const GaloisField>(p, degree);
  return slot;
}

Elem GaloisField::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (a == 0) return b;
  if (b == 0) return a;
  std::int64_t k = static_cast<std::int64_t>(log_[b]) - log_[a];
  if (k < 0) k += q_ - 1;
  std::int64_t z = zech_[k];
  if (z < 0) return 0;
  std::int64_t e = log_[a] + z;
  if (e >= q_ - 1) e -= q_ - 1;
  return exp_[e];
}

Elem GaloisField::neg(Elem a) const {
  if (p_ == 2 || a == 0) return a;
  std::uint32_t e = log_[a] + (q_ - 1) / 2;
  if (e >= q_ - 1) e -= q_ - 1;
  return exp_[e];
}

Elem GaloisField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("GaloisField: inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem GaloisField::pow(Elem a, long long k) const {
  if (a == 0) return k == 0 ? 1 : 0;
  long long m = q_ - 1;
  long long e = (static_cast<long long>(log_[a]) * (k % m)) % m;
  if (e < 0) e += m;
  return exp_[e];
}

Elem GaloisField::exp(long long k) const {
  long long m = q_ - 1;
  k %= m;
  if (k < 0) k += m;
  return exp_[k];
}

Elem GaloisField::from_int(long long k) const {
  k %= p_;
  if (k < 0) k += p_;
  return static_cast<Elem>(k);
}

int GaloisField::digit(Elem a, int k) const { return static_cast<int>((a / pow_p_[k]) % p_); }

Elem GaloisField::subfield_generator(int d) const {
  if (d <= 0 || n_ % d != 0) throw std::invalid_argument("subfield degree does not divide field degree");
  return exp((q_ - 1) / (pow_p_[d] - 1));
}

std::vector<Elem> GaloisField::subfield_elements(int d) const {
  Elem g = subfield_generator(d);
  std::vector<Elem> out{0};
  Elem e = 1;
  for (Elem k = 0; k + 1 < pow_p_[d]; ++k) {
    out.push_back(e);
    e = mul(e, g);
  }
  return out;
}

bool GaloisField::in_subfield(Elem a, int d) const {
  if (a == 0) return true;
  return log_[a] % ((q_ - 1) / (pow_p_[d] - 1)) == 0;
}

FieldMatrix multiply(const GaloisField& f, const FieldMatrix& a, const FieldMatrix& b) {
  FieldMatrix r = FieldMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      Elem x = a(i, k);
      if (x == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) r(i, j) = f.add(r(i, j), f.mul(x, b(k, j)));
    }
  }
  return r;
}

FieldVector multiply(const GaloisField& f, const FieldMatrix& a, const FieldVector& x) {
  FieldVector r = FieldVector::Zero(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) r(i) = f.add(r(i), f.mul(a(i, k), x(k)));
  }
  return r;
}

int rank_mod_p(Eigen::MatrixXi m, int p) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = ((m(i, j) % p) + p) % p;
  }
  std::vector<int> inverse(p, 0);
  for (int a = 1; a < p; ++a) {
    for (int b = 1; b < p; ++b) {
      if ((a * b) % p == 1) inverse[a] = b;
    }
  }
  int rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = rank; r < rows; ++r) {
      if (m(r, c) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(rank));
    int s = inverse[m(rank, c)];
    for (Eigen::Index j = c; j < cols; ++j) m(rank, j) = (m(rank, j) * s) % p;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == rank || m(r, c) == 0) continue;
      int f = m(r, c);
      for (Eigen::Index j = c; j < cols; ++j) m(r, j) = ((m(r, j) - f * m(rank, j)) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace hallbasis
