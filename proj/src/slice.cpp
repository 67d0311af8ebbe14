// Point counts on the block-triangular set Y_N and the slice E_N.

#include "hallbasis/error.hpp"
#include "hallbasis/hall_count.hpp"

#include <algorithm>
#include <map>

namespace hallbasis {

namespace {

constexpr long long kMaxPoints = 4'000'000;

// F_p-coordinates of the subfield F_{p^d} in the basis 1, g, ..., g^{d-1}.
class SubfieldCoords {
 public:
  SubfieldCoords(const GaloisField& f, int d) : f_(f), d_(d) {
    Elem g = f.subfield_generator(d);
    basis_.push_back(1);
    for (int k = 1; k < d; ++k) basis_.push_back(f.mul(basis_.back(), g));
    const int p = f.characteristic();
    std::vector<int> c(d, 0);
    while (true) {
      Elem x = 0;
      for (int k = 0; k < d; ++k) x = f.add(x, f.mul(f.from_int(c[k]), basis_[k]));
      coords_[x] = c;
      int k = 0;
      while (k < d && ++c[k] == p) c[k++] = 0;
      if (k == d) break;
    }
  }
  const std::vector<int>& coords(Elem x) const { return coords_.at(x); }
  Elem element(const int* c) const {
    Elem x = 0;
    for (int k = 0; k < d_; ++k) {
      if (c[k]) x = f_.add(x, f_.mul(f_.from_int(c[k]), basis_[k]));
    }
    return x;
  }
  Elem basis(int k) const { return basis_[k]; }
  int dim() const { return d_; }

 private:
  const GaloisField& f_;
  int d_;
  std::vector<Elem> basis_;
  std::map<Elem, std::vector<int>> coords_;
};

struct Coord {
  int arrow;
  int row;
  int col;
};

// Layer geometry of the standard flag of N and the coordinates of n.
struct FlagData {
  std::vector<std::vector<int>> offset;  // [vertex][layer] start row
  std::vector<std::vector<int>> size;    // [vertex][layer]
  std::vector<Coord> entries;            // strictly block-triangular arrow entries
  std::vector<int> entry_start;          // first F_p coordinate of each entry
  int dim_p = 0;
};

FlagData flag_data(const QuiverType& type, const SpeciesContext& ctx, const ModuleClass& N) {
  FlagData fd;
  const int r = type.rank();
  std::vector<int> layers;
  for (int t = 0; t < type.num_roots(); ++t) {
    if (N.mult[t] > 0) layers.push_back(t);
  }
  fd.offset.assign(r, std::vector<int>(layers.size(), 0));
  fd.size.assign(r, std::vector<int>(layers.size(), 0));
  for (int i = 0; i < r; ++i) {
    int off = 0;
    for (size_t a = 0; a < layers.size(); ++a) {
      fd.offset[i][a] = off;
      fd.size[i][a] = N.mult[layers[a]] * type.roots()[layers[a]].coords[i];
      off += fd.size[i][a];
    }
  }
  const auto& orbits = type.cartan().arrow_orbits;
  const int n = ctx.field().degree() / ctx.ambient_degree();
  for (size_t h = 0; h < orbits.size(); ++h) {
    const int i = orbits[h].src;
    const int j = orbits[h].tgt;
    for (size_t a = 0; a < layers.size(); ++a) {
      for (size_t b = a + 1; b < layers.size(); ++b) {
        // target layer a below source layer b
        for (int row = 0; row < fd.size[j][a]; ++row) {
          for (int col = 0; col < fd.size[i][b]; ++col) {
            fd.entries.push_back({static_cast<int>(h), fd.offset[j][a] + row, fd.offset[i][b] + col});
            fd.entry_start.push_back(fd.dim_p);
            fd.dim_p += n * orbits[h].size;
          }
        }
      }
    }
  }
  return fd;
}

i128 ipow(i128 b, int e) {
  i128 r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

// Enumerates x_N + span(gens) over F_p and tallies iso classes.
std::map<ModuleClass, i128> tally_affine(const QuiverType& type, const SpeciesContext& ctx, const SpeciesRep& base,
                                         const FlagData& fd, const std::vector<std::vector<int>>& gens) {
  const GaloisField& f = ctx.field();
  const int p = f.characteristic();
  const int n = f.degree() / ctx.ambient_degree();
  long long points = 1;
  for (size_t k = 0; k < gens.size(); ++k) {
    points *= p;
    if (points > kMaxPoints) throw Error(ErrorKind::SizeLimitExceeded, "slice has too many points");
  }
  std::vector<SubfieldCoords> fields;
  std::map<int, int> field_of;
  for (const auto& ao : type.cartan().arrow_orbits) {
    int d = n * ao.size;
    if (!field_of.count(d)) {
      field_of[d] = static_cast<int>(fields.size());
      fields.emplace_back(f, d);
    }
  }
  std::map<ModuleClass, i128> out;
  std::vector<int> coeff(gens.size(), 0);
  std::vector<int> point(fd.dim_p, 0);
  const auto& orbits = type.cartan().arrow_orbits;
  while (true) {
    std::fill(point.begin(), point.end(), 0);
    for (size_t g = 0; g < gens.size(); ++g) {
      if (coeff[g] == 0) continue;
      for (int c = 0; c < fd.dim_p; ++c) point[c] = (point[c] + coeff[g] * gens[g][c]) % p;
    }
    SpeciesRep x = base;
    for (size_t e = 0; e < fd.entries.size(); ++e) {
      const Coord& c = fd.entries[e];
      const SubfieldCoords& sc = fields[field_of[n * orbits[c.arrow].size]];
      Elem v = sc.element(&point[fd.entry_start[e]]);
      x.maps[c.arrow](c.row, c.col) = f.add(x.maps[c.arrow](c.row, c.col), v);
    }
    ++out[type.classify(ctx, x)];
    size_t k = 0;
    while (k < coeff.size() && ++coeff[k] == p) coeff[k++] = 0;
    if (k == coeff.size()) break;
  }
  return out;
}

}  // namespace

int HallEngine::unipotent_dim(const ModuleClass& N) const {
  int dim = 0;
  std::vector<int> layers;
  for (int t = 0; t < type_->num_roots(); ++t) {
    if (N.mult[t] > 0) layers.push_back(t);
  }
  for (int i = 0; i < type_->rank(); ++i) {
    int s = 0;
    for (size_t a = 0; a < layers.size(); ++a) {
      for (size_t b = a + 1; b < layers.size(); ++b) {
        s += N.mult[layers[a]] * type_->roots()[layers[a]].coords[i] * N.mult[layers[b]] *
             type_->roots()[layers[b]].coords[i];
      }
    }
    dim += type_->cartan().orbit_sizes[i] * s;
  }
  return dim;
}

UnipotentCount HallEngine::unipotent_table(const ModuleClass& N, long long q) const {
  const SpeciesContext& ctx = type_->context(q);
  FlagData fd = flag_data(*type_, ctx, N);
  std::vector<std::vector<int>> gens;
  for (int c = 0; c < fd.dim_p; ++c) {
    gens.emplace_back(fd.dim_p, 0);
    gens.back()[c] = 1;
  }
  UnipotentCount uc;
  uc.by_class = tally_affine(*type_, ctx, type_->realize(N, q), fd, gens);
  uc.unipotent_order = ipow(q, unipotent_dim(N));
  return uc;
}

std::map<ModuleClass, i128> HallEngine::slice_table(const ModuleClass& N, long long q, SliceMode mode) const {
  const SpeciesContext& ctx = type_->context(q);
  const GaloisField& f = ctx.field();
  const int p = f.characteristic();
  const int n = f.degree() / ctx.ambient_degree();
  const auto& cart = type_->cartan();
  FlagData fd = flag_data(*type_, ctx, N);
  SpeciesRep base = type_->realize(N, q);

  std::map<std::tuple<int, int, int>, int> entry_index;
  for (size_t e = 0; e < fd.entries.size(); ++e) {
    entry_index[{fd.entries[e].arrow, fd.entries[e].row, fd.entries[e].col}] = static_cast<int>(e);
  }
  std::map<int, SubfieldCoords> fields;
  auto field = [&](int d) -> const SubfieldCoords& {
    auto it = fields.find(d);
    if (it == fields.end()) it = fields.emplace(d, SubfieldCoords(f, d)).first;
    return it->second;
  };

  // phi(g) = (g_j x_h - x_h g_i)_h for g running over an F_p-basis of u.
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < type_->rank(); ++i) {
    const int layers = static_cast<int>(fd.offset[i].size());
    const SubfieldCoords& vf = field(n * cart.orbit_sizes[i]);
    for (int a = 0; a < layers; ++a) {
      for (int b = a + 1; b < layers; ++b) {
        for (int r = 0; r < fd.size[i][a]; ++r) {
          for (int c = 0; c < fd.size[i][b]; ++c) {
            for (int k = 0; k < vf.dim(); ++k) {
              const int gr = fd.offset[i][a] + r;
              const int gc = fd.offset[i][b] + c;
              const Elem gv = vf.basis(k);
              std::vector<int> vec(fd.dim_p, 0);
              for (size_t h = 0; h < cart.arrow_orbits.size(); ++h) {
                const auto& ao = cart.arrow_orbits[h];
                const FieldMatrix& x = base.maps[h];
                FieldMatrix delta = FieldMatrix::Zero(x.rows(), x.cols());
                if (ao.tgt == i) {  // g_j x_h: row gr gets gv * row gc of x
                  for (Eigen::Index col = 0; col < x.cols(); ++col)
                    delta(gr, col) = f.add(delta(gr, col), f.mul(gv, x(gc, col)));
                }
                if (ao.src == i) {  // - x_h g_i: column gc gets -gv * column gr of x
                  for (Eigen::Index row = 0; row < x.rows(); ++row)
                    delta(row, gc) = f.sub(delta(row, gc), f.mul(x(row, gr), gv));
                }
                const SubfieldCoords& af = field(n * ao.size);
                for (Eigen::Index row = 0; row < delta.rows(); ++row) {
                  for (Eigen::Index col = 0; col < delta.cols(); ++col) {
                    if (delta(row, col) == 0) continue;
                    auto it = entry_index.find({static_cast<int>(h), static_cast<int>(row), static_cast<int>(col)});
                    if (it == entry_index.end()) {
                      throw Error(ErrorKind::IdentityFailed, "phi(u) leaves the strictly triangular part");
                    }
                    const auto& cs = af.coords(delta(row, col));
                    for (int t = 0; t < af.dim(); ++t) vec[fd.entry_start[it->second] + t] = cs[t];
                  }
                }
              }
              rows.push_back(vec);
            }
          }
        }
      }
    }
  }
  // Row reduce phi(u) over F_p.
  std::vector<int> pivots;
  std::vector<std::vector<int>> basis;
  {
    std::vector<int> inv(p, 0);
    for (int a = 1; a < p; ++a)
      for (int b = 1; b < p; ++b)
        if (a * b % p == 1) inv[a] = b;
    std::vector<std::vector<int>> m = rows;
    size_t rank = 0;
    for (int c = 0; c < fd.dim_p && rank < m.size(); ++c) {
      size_t piv = rank;
      while (piv < m.size() && m[piv][c] == 0) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[piv], m[rank]);
      int s = inv[m[rank][c]];
      for (int& x : m[rank]) x = x * s % p;
      for (size_t r = 0; r < m.size(); ++r) {
        if (r == rank || m[r][c] == 0) continue;
        int fac = m[r][c];
        for (int j = 0; j < fd.dim_p; ++j) m[r][j] = ((m[r][j] - fac * m[rank][j]) % p + p) % p;
      }
      pivots.push_back(c);
      ++rank;
    }
    basis.assign(m.begin(), m.begin() + static_cast<long>(rank));
  }
  std::vector<std::vector<int>> gens;
  if (mode == SliceMode::Image) {
    gens = basis;
  } else {
    for (int c = 0; c < fd.dim_p; ++c) {
      if (std::binary_search(pivots.begin(), pivots.end(), c)) continue;
      gens.emplace_back(fd.dim_p, 0);
      gens.back()[c] = 1;
    }
  }
  return tally_affine(*type_, ctx, base, fd, gens);
}

i128 HallEngine::slice_count(const ModuleClass& N, const ModuleClass& M, long long q, SliceMode mode) const {
  if (N.dim != M.dim) return 0;
  auto t = slice_table(N, q, mode);
  auto it = t.find(M);
  return it == t.end() ? 0 : it->second;
}

}  // namespace hallbasis
