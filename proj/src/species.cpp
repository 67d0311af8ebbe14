#include "hallbasis/species.hpp"

#include "hallbasis/error.hpp"
#include "hallbasis/polynomial.hpp"

#include <numeric>

namespace hallbasis {

SpeciesContext::SpeciesContext(FoldedCartan cartan, long long q) : cartan_(std::move(cartan)), q_(q) {
  long long p = 0;
  if (!is_prime_power(q, &p, &n_)) throw Error(ErrorKind::UnsupportedFieldSize, std::to_string(q) + " is not a prime power");
  p_ = static_cast<int>(p);
  for (int s : cartan_.orbit_sizes) S_ = std::lcm(S_, s);
  for (const auto& h : cartan_.arrow_orbits) S_ = std::lcm(S_, h.size);
  field_ = GaloisField::get(p_, n_ * S_);
  elements_.resize(S_ + 1);
  for (int d = 1; d <= S_; ++d) {
    if (S_ % d == 0) elements_[d] = field_->subfield_elements(n_ * d);
  }
}

const std::vector<Elem>& SpeciesContext::elements(int d) const { return elements_.at(d); }

Elem SpeciesContext::frobenius(Elem x, int k) const {
  Elem r = x;
  for (int t = 0; t < k; ++t) r = field_->pow(r, q_);
  return r;
}

SpeciesRep zero_rep(const SpeciesContext& ctx, const DimVector& dim) {
  SpeciesRep r;
  r.dim = dim;
  for (const auto& h : ctx.cartan().arrow_orbits) r.maps.push_back(FieldMatrix::Zero(dim[h.tgt], dim[h.src]));
  return r;
}

SpeciesRep direct_sum(const SpeciesRep& a, const SpeciesRep& b) {
  SpeciesRep r;
  r.dim.resize(a.dim.size());
  for (size_t i = 0; i < a.dim.size(); ++i) r.dim[i] = a.dim[i] + b.dim[i];
  for (size_t h = 0; h < a.maps.size(); ++h) {
    const FieldMatrix& x = a.maps[h];
    const FieldMatrix& y = b.maps[h];
    FieldMatrix m = FieldMatrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
    m.topLeftCorner(x.rows(), x.cols()) = x;
    m.bottomRightCorner(y.rows(), y.cols()) = y;
    r.maps.push_back(m);
  }
  return r;
}

SpeciesRep random_rep(const SpeciesContext& ctx, const DimVector& dim, std::mt19937_64& rng) {
  SpeciesRep r = zero_rep(ctx, dim);
  for (size_t h = 0; h < r.maps.size(); ++h) {
    const auto& elems = ctx.elements(ctx.arrow_degree(static_cast<int>(h)));
    for (Eigen::Index i = 0; i < r.maps[h].rows(); ++i) {
      for (Eigen::Index j = 0; j < r.maps[h].cols(); ++j) r.maps[h](i, j) = elems[rng() % elems.size()];
    }
  }
  return r;
}

std::vector<int> rref(const GaloisField& f, FieldMatrix& m) {
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < m.cols() && row < m.rows(); ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (m(r, c) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    Elem s = f.inv(m(row, c));
    for (Eigen::Index j = c; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), s);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c) == 0) continue;
      Elem g = f.neg(m(r, c));
      for (Eigen::Index j = c; j < m.cols(); ++j) m(r, j) = f.add(m(r, j), f.mul(g, m(row, j)));
    }
    pivots.push_back(static_cast<int>(c));
    ++row;
  }
  return pivots;
}

int rank(const GaloisField& f, FieldMatrix m) { return static_cast<int>(rref(f, m).size()); }

int hom_dim(const SpeciesContext& ctx, const SpeciesRep& x, const SpeciesRep& y) {
  const FoldedCartan& c = ctx.cartan();
  const GaloisField& f = ctx.field();
  // Unknown blocks g_{(i,k)} : X_i -> Y_i for k in Z/s_i.
  std::vector<std::vector<int>> offset(c.rank());
  int unknowns = 0;
  for (int i = 0; i < c.rank(); ++i) {
    for (int k = 0; k < ctx.vertex_degree(i); ++k) {
      offset[i].push_back(unknowns);
      unknowns += x.dim[i] * y.dim[i];
    }
  }
  if (unknowns == 0) return 0;
  int equations = 0;
  for (size_t h = 0; h < c.arrow_orbits.size(); ++h) {
    const auto& ao = c.arrow_orbits[h];
    equations += ao.size * y.dim[ao.tgt] * x.dim[ao.src];
  }
  FieldMatrix sys = FieldMatrix::Zero(equations, unknowns);
  int row = 0;
  for (size_t h = 0; h < c.arrow_orbits.size(); ++h) {
    const auto& ao = c.arrow_orbits[h];
    const int i = ao.src;
    const int j = ao.tgt;
    for (int k = 0; k < ao.size; ++k) {
      FieldMatrix a = x.maps[h];
      FieldMatrix b = y.maps[h];
      for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index s = 0; s < a.cols(); ++s) a(r, s) = ctx.frobenius(a(r, s), k);
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        for (Eigen::Index s = 0; s < b.cols(); ++s) b(r, s) = ctx.frobenius(b(r, s), k);
      const int gi = offset[i][k % ctx.vertex_degree(i)];
      const int gj = offset[j][k % ctx.vertex_degree(j)];
      // (g_j a - b g_i)(r, s) = 0 for r < Y_j, s < X_i
      for (int r = 0; r < y.dim[j]; ++r) {
        for (int s = 0; s < x.dim[i]; ++s) {
          for (int t = 0; t < x.dim[j]; ++t) {
            // g_j(r, t) * a(t, s)
            int col = gj + r * x.dim[j] + t;
            sys(row, col) = f.add(sys(row, col), a(t, s));
          }
          for (int t = 0; t < y.dim[i]; ++t) {
            // - b(r, t) * g_i(t, s)
            int col = gi + t * x.dim[i] + s;
            sys(row, col) = f.sub(sys(row, col), b(r, t));
          }
          ++row;
        }
      }
    }
  }
  return unknowns - rank(f, sys);
}

}  // namespace hallbasis
