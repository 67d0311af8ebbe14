#include "hallbasis/hall_count.hpp"

#include "hallbasis/error.hpp"
#include "hallbasis/poly_cache.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace hallbasis {

const char* direction_name(FiltrationDirection d) {
  return d == FiltrationDirection::TopFirst ? "top-first" : "bottom-first";
}

// ---------------------------------------------------------------------------
// Submodule enumeration

namespace {

struct VertexChoice {
  FieldMatrix basis;  // k x n, reduced row echelon
  std::vector<int> pivots;
  std::vector<int> free_cols;  // non-pivot columns
};

// Residue of w modulo the K_h-span of the echelon rows; true if w is in the span.
bool reduce(const GaloisField& f, const VertexChoice& u, FieldVector& w) {
  for (size_t r = 0; r < u.pivots.size(); ++r) {
    Elem c = w(u.pivots[r]);
    if (c == 0) continue;
    Elem nc = f.neg(c);
    for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = f.add(w(j), f.mul(nc, u.basis(r, j)));
  }
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    if (w(j) != 0) return false;
  }
  return true;
}

bool stable(const GaloisField& f, const FieldMatrix& x, const VertexChoice& src, const VertexChoice& tgt) {
  for (Eigen::Index r = 0; r < src.basis.rows(); ++r) {
    FieldVector w = multiply(f, x, FieldVector(src.basis.row(r).transpose()));
    if (!reduce(f, tgt, w)) return false;
  }
  return true;
}

class SubmoduleWalker {
 public:
  // A null `visit` only counts.
  SubmoduleWalker(const SpeciesContext& ctx, const SpeciesRep& rep, const DimVector* sub_dim,
                  const std::function<void(const SpeciesRep&, const SpeciesRep&)>* visit)
      : ctx_(ctx), f_(ctx.field()), rep_(rep), sub_dim_(sub_dim), visit_(visit), choice_(rep.dim.size()) {}

  long long run() {
    vertex(0);
    return count_;
  }

 private:
  void vertex(int i) {
    const int r = static_cast<int>(rep_.dim.size());
    if (i == r) {
      emit();
      return;
    }
    const int n = rep_.dim[i];
    int lo = 0;
    int hi = n;
    if (sub_dim_) lo = hi = (*sub_dim_)[i];
    for (int k = lo; k <= hi; ++k) {
      std::vector<int> piv(k);
      for (int a = 0; a < k; ++a) piv[a] = a;
      while (true) {
        subspaces(i, n, piv);
        // next combination
        int a = k - 1;
        while (a >= 0 && piv[a] == n - k + a) --a;
        if (a < 0) break;
        ++piv[a];
        for (int b = a + 1; b < k; ++b) piv[b] = piv[b - 1] + 1;
      }
    }
  }

  void subspaces(int i, int n, const std::vector<int>& piv) {
    const int k = static_cast<int>(piv.size());
    VertexChoice& ch = choice_[i];
    ch.pivots = piv;
    ch.free_cols.clear();
    for (int c = 0; c < n; ++c) {
      if (!std::binary_search(piv.begin(), piv.end(), c)) ch.free_cols.push_back(c);
    }
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < k; ++a) {
      for (int c : ch.free_cols) {
        if (c > piv[a]) slots.emplace_back(a, c);
      }
    }
    const auto& elems = ctx_.elements(ctx_.vertex_degree(i));
    std::vector<size_t> digit(slots.size(), 0);
    ch.basis = FieldMatrix::Zero(k, n);
    for (int a = 0; a < k; ++a) ch.basis(a, piv[a]) = 1;
    for (size_t s = 0; s < slots.size(); ++s) ch.basis(slots[s].first, slots[s].second) = elems[0];
    while (true) {
      if (arrows_ok(i)) vertex(i + 1);
      size_t s = 0;
      while (s < slots.size() && ++digit[s] == elems.size()) {
        digit[s] = 0;
        ch.basis(slots[s].first, slots[s].second) = elems[0];
        ++s;
      }
      if (s == slots.size()) break;
      ch.basis(slots[s].first, slots[s].second) = elems[digit[s]];
    }
  }

  bool arrows_ok(int i) {
    const auto& orbits = ctx_.cartan().arrow_orbits;
    for (size_t h = 0; h < orbits.size(); ++h) {
      if (std::max(orbits[h].src, orbits[h].tgt) != i) continue;
      if (!stable(f_, rep_.maps[h], choice_[orbits[h].src], choice_[orbits[h].tgt])) return false;
    }
    return true;
  }

  void emit() {
    ++count_;
    if (!visit_) return;
    const auto& orbits = ctx_.cartan().arrow_orbits;
    SpeciesRep sub;
    SpeciesRep quot;
    for (size_t i = 0; i < choice_.size(); ++i) {
      sub.dim.push_back(static_cast<int>(choice_[i].pivots.size()));
      quot.dim.push_back(rep_.dim[i] - sub.dim.back());
    }
    for (size_t h = 0; h < orbits.size(); ++h) {
      const VertexChoice& s = choice_[orbits[h].src];
      const VertexChoice& t = choice_[orbits[h].tgt];
      const FieldMatrix& x = rep_.maps[h];
      FieldMatrix ms(t.pivots.size(), s.pivots.size());
      for (Eigen::Index c = 0; c < s.basis.rows(); ++c) {
        FieldVector w = multiply(f_, x, FieldVector(s.basis.row(c).transpose()));
        for (size_t r = 0; r < t.pivots.size(); ++r) ms(r, c) = w(t.pivots[r]);
      }
      FieldMatrix mq(t.free_cols.size(), s.free_cols.size());
      for (size_t c = 0; c < s.free_cols.size(); ++c) {
        FieldVector w = x.col(s.free_cols[c]);
        reduce(f_, t, w);
        for (size_t r = 0; r < t.free_cols.size(); ++r) mq(r, c) = w(t.free_cols[r]);
      }
      sub.maps.push_back(ms);
      quot.maps.push_back(mq);
    }
    (*visit_)(sub, quot);
  }

  const SpeciesContext& ctx_;
  const GaloisField& f_;
  const SpeciesRep& rep_;
  const DimVector* sub_dim_;
  const std::function<void(const SpeciesRep&, const SpeciesRep&)>* visit_;
  std::vector<VertexChoice> choice_;
  long long count_ = 0;
};

DimVector minus(const DimVector& a, const DimVector& b) {
  DimVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool nonnegative(const DimVector& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; });
}

bool is_zero_class(const ModuleClass& m) {
  return std::all_of(m.mult.begin(), m.mult.end(), [](int x) { return x == 0; });
}

}  // namespace

void for_each_submodule(const SpeciesContext& ctx, const SpeciesRep& rep, const DimVector* sub_dim,
                        const std::function<void(const SpeciesRep&, const SpeciesRep&)>& visit) {
  if (sub_dim && !nonnegative(minus(rep.dim, *sub_dim))) return;
  if (sub_dim && !nonnegative(*sub_dim)) return;
  SubmoduleWalker(ctx, rep, sub_dim, &visit).run();
}

long long count_submodules(const SpeciesContext& ctx, const SpeciesRep& rep, const DimVector& sub_dim) {
  if (!nonnegative(minus(rep.dim, sub_dim)) || !nonnegative(sub_dim)) return 0;
  return SubmoduleWalker(ctx, rep, &sub_dim, nullptr).run();
}

// ---------------------------------------------------------------------------
// Interpolation

HallPolynomial certify_polynomial(const std::function<i128(long long)>& count, int cap, const std::string& what) {
  const auto& pp = prime_powers();
  std::vector<i128> values;
  auto value = [&](size_t idx) {
    while (values.size() <= idx) values.push_back(count(pp[values.size()]));
    return values[idx];
  };
  for (int k = 1; k <= cap + 1; ++k) {
    std::vector<long long> xs(pp.begin(), pp.begin() + k);
    std::vector<i128> ys;
    for (int j = 0; j < k; ++j) ys.push_back(value(j));
    auto poly = interpolate(xs, ys);
    bool ok = poly.has_value();
    for (int j = k; ok && j < k + kHeldOut; ++j) ok = poly->evaluate(pp[j]) == value(j);
    if (ok) {
      HallPolynomial hp;
      hp.poly = *poly;
      hp.samples = xs;
      hp.heldout.assign(pp.begin() + k, pp.begin() + k + kHeldOut);
      return hp;
    }
  }
  throw Error(ErrorKind::CertificationFailed,
              what + ": no interpolant of degree <= " + std::to_string(cap) + " matches the held-out counts");
}

// ---------------------------------------------------------------------------
// Hall numbers

HallEngine::HallEngine(std::shared_ptr<const QuiverType> type, PolyCache* cache)
    : type_(std::move(type)), cache_(cache) {}

const HallEngine::Table& HallEngine::hall_table(const ModuleClass& L, long long q, const DimVector* sub_dim) const {
  const DimVector key_dim = sub_dim ? *sub_dim : DimVector{};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find({L, key_dim, q});
    if (it != tables_.end()) return *it->second;
  }
  const SpeciesContext& ctx = type_->context(q);
  SpeciesRep rep = type_->realize(L, q);
  auto table = std::make_unique<Table>();
  // classification is skipped for dimension vectors carrying a single class
  std::map<DimVector, std::optional<ModuleClass>> unique;
  auto single = [&](const DimVector& d) {
    auto it = unique.find(d);
    if (it == unique.end()) {
      auto all = type_->enumerate_modules(d);
      it = unique.emplace(d, all.size() == 1 ? std::optional<ModuleClass>(all[0]) : std::nullopt).first;
    }
    return it->second;
  };
  auto classify = [&](const SpeciesRep& x) {
    auto c = single(x.dim);
    return c ? *c : type_->classify(ctx, x);
  };
  std::optional<ModuleClass> n_only, m_only;
  if (sub_dim && nonnegative(*sub_dim) && nonnegative(minus(L.dim, *sub_dim))) {
    n_only = single(*sub_dim);
    m_only = single(minus(L.dim, *sub_dim));
  }
  if (n_only && m_only) {
    long long c = count_submodules(ctx, rep, *sub_dim);
    if (c) (*table)[{*m_only, *n_only}] = c;
  } else {
    for_each_submodule(ctx, rep, sub_dim, [&](const SpeciesRep& sub, const SpeciesRep& quot) {
      ++(*table)[{classify(quot), classify(sub)}];
    });
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = tables_[{L, key_dim, q}];
  if (!slot) slot = std::move(table);
  return *slot;
}

long long HallEngine::hall_number(const ModuleClass& L, const ModuleClass& M, const ModuleClass& N,
                                  long long q) const {
  for (size_t i = 0; i < L.dim.size(); ++i) {
    if (L.dim[i] != M.dim[i] + N.dim[i]) return 0;
  }
  const Table* t = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto full = tables_.find({L, DimVector{}, q});
    if (full != tables_.end()) t = full->second.get();
  }
  if (!t) t = &hall_table(L, q, &N.dim);
  auto it = t->find({M, N});
  return it == t->end() ? 0 : it->second;
}

int HallEngine::degree_cap(const DimVector& l, const DimVector& n) const {
  int cap = 0;
  for (int i = 0; i < type_->rank(); ++i) cap += type_->cartan().orbit_sizes[i] * n[i] * (l[i] - n[i]);
  return cap;
}

std::string HallEngine::cache_key(const ModuleClass& L, const ModuleClass& M, const ModuleClass& N) const {
  return type_->label() + "|" + type_->name(L) + "|" + type_->name(M) + "|" + type_->name(N);
}

HallPolynomial HallEngine::hall_polynomial(const ModuleClass& L, const ModuleClass& M, const ModuleClass& N) const {
  for (size_t i = 0; i < L.dim.size(); ++i) {
    if (L.dim[i] != M.dim[i] + N.dim[i]) return {};
  }
  const std::string key = cache_key(L, M, N);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = polys_.find(key);
    if (it != polys_.end()) return it->second;
  }
  if (cache_) {
    if (auto rec = cache_->get(key)) {
      HallPolynomial hp{IntPoly(rec->coeffs), rec->samples, rec->heldout};
      std::lock_guard<std::mutex> lock(mu_);
      polys_[key] = hp;
      return hp;
    }
  }
  HallPolynomial hp = certify_polynomial([&](long long q) { return static_cast<i128>(hall_number(L, M, N, q)); },
                                         degree_cap(L.dim, N.dim), "g[" + key + "]");
  if (cache_) cache_->put({key, hp.poly.coeffs(), hp.samples, hp.heldout});
  std::lock_guard<std::mutex> lock(mu_);
  polys_[key] = hp;
  return hp;
}

void HallEngine::prefetch(const std::vector<ModuleClass>& ls, const std::vector<long long>& qs, int jobs) const {
  std::vector<std::pair<size_t, size_t>> tasks;
  for (size_t a = 0; a < ls.size(); ++a) {
    for (size_t b = 0; b < qs.size(); ++b) tasks.emplace_back(a, b);
  }
  // realize indecomposables up front so workers only read shared state
  for (long long q : qs) {
    for (int t = 0; t < type_->num_roots(); ++t) type_->realize_indecomposable(t, q);
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k; (k = next++) < tasks.size();) hall_table(ls[tasks[k].first], qs[tasks[k].second]);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::max(1, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// Filtrations

std::vector<ModuleClass> HallEngine::isotypic_layers(const ModuleClass& N) const {
  std::vector<ModuleClass> out;
  for (int t = 0; t < type_->num_roots(); ++t) out.push_back(type_->indecomposable(t, N.mult[t]));
  return out;
}

void HallEngine::validate_layers(const std::vector<ModuleClass>& layers) const {
  int last = -1;
  for (const auto& layer : layers) {
    int support = -1;
    for (int t = 0; t < type_->num_roots(); ++t) {
      if (layer.mult[t] == 0) continue;
      if (support >= 0) throw Error(ErrorKind::LayerOrderViolation, "layer " + type_->name(layer) + " is not isotypic");
      support = t;
    }
    if (support < 0) continue;
    if (support <= last) throw Error(ErrorKind::LayerOrderViolation, "layers are not listed in directed order");
    last = support;
  }
}

namespace {

std::vector<ModuleClass> top_first_sequence(const std::vector<ModuleClass>& layers, FiltrationDirection d) {
  std::vector<ModuleClass> seq;
  for (const auto& l : layers) {
    if (!is_zero_class(l)) seq.push_back(l);
  }
  if (d == FiltrationDirection::BottomFirst) std::reverse(seq.begin(), seq.end());
  return seq;
}

}  // namespace

HallPolynomial HallEngine::filtration_polynomial(const ModuleClass& M, const std::vector<ModuleClass>& layers,
                                                 FiltrationDirection direction) const {
  validate_layers(layers);
  std::vector<ModuleClass> seq = top_first_sequence(layers, direction);
  DimVector total(type_->rank(), 0);
  for (const auto& l : seq) {
    for (int i = 0; i < type_->rank(); ++i) total[i] += l.dim[i];
  }
  HallPolynomial out;
  if (total != M.dim) return out;
  std::function<IntPoly(const ModuleClass&, size_t)> rec = [&](const ModuleClass& X, size_t k) -> IntPoly {
    if (k + 1 == seq.size()) return IntPoly::constant(X == seq[k] ? 1 : 0);
    DimVector rest = minus(X.dim, seq[k].dim);
    if (!nonnegative(rest)) return {};
    IntPoly acc;
    for (const auto& Y : type_->enumerate_modules(rest)) {
      IntPoly g = hall_polynomial(X, seq[k], Y).poly;
      if (!g.is_zero()) acc = acc + g * rec(Y, k + 1);
    }
    return acc;
  };
  out.poly = seq.empty() ? IntPoly::constant(is_zero_class(M) ? 1 : 0) : rec(M, 0);
  // cross-check against direct enumeration of filtrations
  const long long q0 = 2;
  if (out.poly.evaluate(q0) != filtration_count_direct(M, layers, direction, q0)) {
    throw Error(ErrorKind::CertificationFailed, "filtration polynomial of " + type_->name(M) +
                                                    " disagrees with direct enumeration at q=2");
  }
  out.heldout = {q0};
  return out;
}

long long HallEngine::filtration_count_direct(const ModuleClass& M, const std::vector<ModuleClass>& layers,
                                              FiltrationDirection direction, long long q) const {
  validate_layers(layers);
  std::vector<ModuleClass> seq = top_first_sequence(layers, direction);
  const SpeciesContext& ctx = type_->context(q);
  std::function<long long(const SpeciesRep&, size_t)> rec = [&](const SpeciesRep& x, size_t k) -> long long {
    if (k == seq.size()) return std::all_of(x.dim.begin(), x.dim.end(), [](int d) { return d == 0; }) ? 1 : 0;
    if (k + 1 == seq.size()) return type_->classify(ctx, x) == seq[k] ? 1 : 0;
    DimVector sub_dim = minus(x.dim, seq[k].dim);
    if (!nonnegative(sub_dim)) return 0;
    long long total = 0;
    for_each_submodule(ctx, x, &sub_dim, [&](const SpeciesRep& sub, const SpeciesRep& quot) {
      if (type_->classify(ctx, quot) == seq[k]) total += rec(sub, k + 1);
    });
    return total;
  };
  return rec(type_->realize(M, q), 0);
}

}  // namespace hallbasis
