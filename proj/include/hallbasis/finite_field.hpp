#pragma once

// Finite fields F_{p^n} via exp/log tables and Zech logarithms.
//
// Elements are encoded as integers whose base-p digits are the coordinates
// in the power basis 1, x, ..., x^{n-1} of F_p[x]/(f), f primitive.

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <vector>

namespace hallbasis {

using Elem = std::uint32_t;
using FieldMatrix = Eigen::Matrix<Elem, Eigen::Dynamic, Eigen::Dynamic>;
using FieldVector = Eigen::Matrix<Elem, Eigen::Dynamic, 1>;

class GaloisField {
 public:
  GaloisField(int p, int degree);
  /// Shared instance per (p, degree).
  static std::shared_ptr<const GaloisField> get(int p, int degree);

  int characteristic() const { return p_; }
  int degree() const { return n_; }
  Elem size() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem pow(Elem a, long long k) const;
  Elem exp(long long k) const;
  std::uint32_t log(Elem a) const { return log_[a]; }
  /// Prime-field element k mod p.
  Elem from_int(long long k) const;
  /// F_p coordinate k of a.
  int digit(Elem a, int k) const;

  /// Primitive element of the subfield with p^d elements (d | degree).
  Elem subfield_generator(int d) const;
  std::vector<Elem> subfield_elements(int d) const;
  bool in_subfield(Elem a, int d) const;

 private:
  int p_;
  int n_;
  Elem q_;
  std::vector<int> modulus_;  // low first, monic, degree n
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::int64_t> zech_;  // log(1 + x^k), -1 when 1 + x^k = 0
  std::vector<Elem> pow_p_;         // p^k
};

/// Matrix product over the field.
FieldMatrix multiply(const GaloisField& f, const FieldMatrix& a, const FieldMatrix& b);
FieldVector multiply(const GaloisField& f, const FieldMatrix& a, const FieldVector& x);

/// Rank of an integer matrix over F_p (entries reduced mod p first).
int rank_mod_p(Eigen::MatrixXi m, int p);

}  // namespace hallbasis
