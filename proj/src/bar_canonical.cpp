#include "hallbasis/bar_canonical.hpp"

#include "hallbasis/error.hpp"

#include <functional>
#include <set>

namespace hallbasis {

int TransitionMatrix::index_of(const ModuleClass& c) const {
  for (size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == c) return static_cast<int>(i);
  }
  return -1;
}

const Laurent& TransitionMatrix::at(const ModuleClass& row, const ModuleClass& col) const {
  int i = index_of(row);
  int j = index_of(col);
  if (i < 0 || j < 0) throw Error(ErrorKind::DimensionMismatch, "class not indexed by this matrix");
  return m(i, j);
}

namespace {

Laurent unit_inverse(const Laurent& x) {
  if (!x.is_unit()) throw Error(ErrorKind::EliminationFailed, "pivot " + x.str() + " is not a unit");
  const auto& [k, c] = *x.terms().begin();
  return Laurent::monomial(-k, *c.unit_inverse());
}

std::vector<ModuleClass> ordered_classes(const QuiverType& type, const DimVector& nu, bool reverse_ties) {
  return linear_extension(type, type.enumerate_modules(nu), reverse_ties);
}

int simple_root(const QuiverType& type, int i) {
  for (int t = 0; t < type.num_roots(); ++t) {
    const auto& c = type.roots()[t].coords;
    int total = 0;
    for (int x : c) total += x;
    if (total == 1 && c[i] == 1) return t;
  }
  throw Error(ErrorKind::NotFiniteType, "missing simple root");
}

struct Word {
  std::vector<ModuleClass> letters;
  AlgebraElement value;
};

// All products of generators u_{aS_i} of total dimension nu, in a fixed order.
std::vector<Word> monomials(const QuiverType& type, const HallAlgebra& alg, const DimVector& nu) {
  std::vector<Word> out;
  Word cur;
  cur.value = alg.unit();
  DimVector rest = nu;
  std::function<void()> rec = [&]() {
    bool done = true;
    for (int x : rest) done = done && x == 0;
    if (done) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i < type.rank(); ++i) {
      for (int a = 1; a <= rest[i]; ++a) {
        ModuleClass g = type.indecomposable(simple_root(type, i), a);
        Word saved = cur;
        cur.letters.push_back(g);
        cur.value = alg.multiply(cur.value, AlgebraElement::basis(g));
        rest[i] -= a;
        rec();
        rest[i] += a;
        cur = std::move(saved);
      }
    }
  };
  rec();
  return out;
}

std::string class_pair(const QuiverType& type, const ModuleClass& a, const ModuleClass& b) {
  return "(" + type.name(a) + ", " + type.name(b) + ")";
}

}  // namespace

OracleResult bar_matrix_oracle(const HallEngine& engine, const DimVector& nu, Twist twist, bool reverse_ties) {
  const QuiverType& type = engine.type();
  HallAlgebra alg(engine, twist);
  OracleResult res;
  res.twist = twist;
  res.r.role = 'R';
  res.r.classes = ordered_classes(type, nu, reverse_ties);
  const int n = static_cast<int>(res.r.classes.size());
  if (n == 1) {
    // a single class is semisimple with a dense orbit: its u is bar-fixed
    res.u_matrix = LaurentMatrix::Constant(1, 1, Laurent(1));
    res.r.m = res.u_matrix;
    return res;
  }

  // generator powers must be bar-symmetric multiples of the divided powers
  for (int i = 0; i < type.rank(); ++i) {
    ModuleClass s = type.indecomposable(simple_root(type, i));
    AlgebraElement pw = alg.unit();
    for (int a = 1; a <= nu[i]; ++a) {
      pw = alg.multiply(pw, AlgebraElement::basis(s));
      ModuleClass g = type.indecomposable(simple_root(type, i), a);
      Laurent c = pw.coeff(g);
      if (c.bar() != c) {
        throw Error(ErrorKind::EliminationFailed, std::string(twist_name(twist)) + " twist: u_" + type.name(s) + "^" +
                                                      std::to_string(a) + " = (" + c.str() + ") u_" + type.name(g) +
                                                      " is not bar-symmetric");
      }
    }
  }

  std::vector<Word> words = monomials(type, alg, nu);
  std::map<ModuleClass, AlgebraElement> bar_u;
  std::set<ModuleClass> done;
  for (const ModuleClass& lam : res.r.classes) {
    const Word* pick = nullptr;
    for (const Word& w : words) {
      bool fits = true;
      for (const auto& [m, c] : w.value.terms()) fits = fits && (m == lam || done.count(m));
      if (fits && w.value.coeff(lam).is_unit()) {
        pick = &w;
        break;
      }
    }
    if (!pick) {
      throw Error(ErrorKind::EliminationFailed, std::string(twist_name(twist)) + " twist: no monomial has leading class " +
                                                    type.name(lam) + " with unit coefficient");
    }
    // m = c u_lam + sum c_mu u_mu is bar-fixed, so
    // bar(u_lam) = bar(c)^-1 (m - sum bar(c_mu) bar(u_mu))
    AlgebraElement rhs = pick->value;
    for (const auto& [m, c] : pick->value.terms()) {
      if (!(m == lam)) rhs = rhs - c.bar() * bar_u.at(m);
    }
    bar_u[lam] = unit_inverse(pick->value.coeff(lam).bar()) * rhs;
    done.insert(lam);
  }

  res.u_matrix = LaurentMatrix::Zero(n, n);
  res.r.m = LaurentMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const ModuleClass& lam = res.r.classes[i];
    const int dl = type.orbit_dim(lam);
    for (const auto& [mu, c] : bar_u.at(lam).terms()) {
      int j = res.r.index_of(mu);
      res.u_matrix(i, j) = c;
      res.r.m(i, j) = c.shifted(-dl - type.orbit_dim(mu));
    }
  }
  return res;
}

TwistSelection select_twist(const HallEngine& engine) {
  const QuiverType& type = engine.type();
  std::vector<DimVector> probes;
  for (const auto& h : type.cartan().arrow_orbits) {
    DimVector nu(type.rank(), 0);
    nu[h.src] += 1;
    nu[h.tgt] += 1;
    probes.push_back(nu);
  }
  for (int i = 0; i < type.rank(); ++i) {
    DimVector nu(type.rank(), 0);
    nu[i] = 2;
    probes.push_back(nu);
  }
  TwistSelection sel;
  for (Twist t : {Twist::Standard, Twist::Euler, Twist::Geometric}) {
    std::string why;
    for (const auto& nu : probes) {
      try {
        OracleResult res = bar_matrix_oracle(engine, nu, t, false);
        why = check_triangular(type, res.r);
        if (why.empty()) why = check_involution(res.r);
        if (!why.empty()) why = std::string(twist_name(t)) + " twist: " + why;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EliminationFailed) throw;
        why = e.what();
      }
      if (!why.empty()) break;
    }
    if (why.empty()) {
      sel.twist = t;
      return sel;
    }
    sel.rejected.push_back(why);
  }
  std::string all;
  for (const auto& r : sel.rejected) all += (all.empty() ? "" : "; ") + r;
  throw Error(ErrorKind::EliminationFailed, "no twist gives a unitriangular bar involution: " + all);
}

OracleResult bar_matrix_oracle(const HallEngine& engine, const DimVector& nu, bool reverse_ties) {
  TwistSelection sel = select_twist(engine);
  OracleResult res = bar_matrix_oracle(engine, nu, sel.twist, reverse_ties);
  res.rejected = sel.rejected;
  return res;
}

IntPoly gs_ratio(const HallEngine& engine, const ModuleClass& M, const ModuleClass& N, FiltrationDirection d) {
  const QuiverType& type = engine.type();
  auto layers = engine.isotypic_layers(N);
  IntPoly num = engine.filtration_polynomial(M, layers, d).poly;
  if (num.is_zero()) return num;
  for (const auto& layer : layers) num = num * type.aut_poly(layer);
  auto x = num.divide_exact(type.aut_poly(M));
  if (!x) {
    throw Error(ErrorKind::NonLaurentEntry, std::string(direction_name(d)) + " entry " + class_pair(type, M, N) + ": " +
                                                num.str() + " is not divisible by a_M = " + type.aut_poly(M).str());
  }
  return *x;
}

TransitionMatrix bar_matrix_gs(const HallEngine& engine, const DimVector& nu, FiltrationDirection d) {
  const QuiverType& type = engine.type();
  TransitionMatrix r;
  r.role = 'R';
  r.classes = ordered_classes(type, nu, false);
  const int n = static_cast<int>(r.classes.size());
  r.m = LaurentMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const ModuleClass& M = r.classes[i];
    for (int j = 0; j < n; ++j) {
      const ModuleClass& N = r.classes[j];
      IntPoly x = gs_ratio(engine, M, N, d);
      r.m(i, j) = x.to_laurent(2).shifted(type.orbit_dim(N) - type.orbit_dim(M));
    }
  }
  return r;
}

GsReport select_direction(const HallEngine& engine, const DimVector& nu, const TransitionMatrix& oracle,
                          DirectionChoice choice) {
  std::vector<FiltrationDirection> dirs;
  if (choice != DirectionChoice::Bottom) dirs.push_back(FiltrationDirection::TopFirst);
  if (choice != DirectionChoice::Top) dirs.push_back(FiltrationDirection::BottomFirst);
  GsReport rep;
  std::vector<TransitionMatrix> winners;
  for (FiltrationDirection d : dirs) {
    DirectionTrial t;
    t.direction = d;
    try {
      TransitionMatrix r = bar_matrix_gs(engine, nu, d);
      t.failure = check_involution(r);
      if (t.failure.empty()) t.failure = compare_matrices(r, oracle);
      if (t.failure.empty()) {
        t.ok = true;
        winners.push_back(r);
        rep.chosen = d;
        rep.r = r;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonLaurentEntry && e.kind() != ErrorKind::CertificationFailed) throw;
      t.failure = e.what();
    }
    rep.trials.push_back(t);
  }
  if (winners.empty()) {
    std::string all;
    for (const auto& t : rep.trials) all += std::string(all.empty() ? "" : "; ") + direction_name(t.direction) + ": " + t.failure;
    throw Error(ErrorKind::IdentityFailed, "no filtration direction reproduces the oracle: " + all);
  }
  if (winners.size() == 2) {
    rep.tie = true;
    rep.chosen = FiltrationDirection::BottomFirst;
    rep.r = winners.back();
  }
  return rep;
}

CanonicalBasis canonical_basis(const QuiverType& type, const TransitionMatrix& r) {
  const int n = static_cast<int>(r.classes.size());
  CanonicalBasis cb;
  cb.p.role = 'P';
  cb.p.classes = r.classes;
  cb.p.m = LaurentMatrix::Zero(n, n);
  for (int l = 0; l < n; ++l) {
    cb.p.m(l, l) = Laurent(1);
    // coefficient of pbw_mu in bar(b_l) - b_l must vanish:
    // p_{l,mu} - bar(p_{l,mu}) = sum_{mu < nu <= l} bar(p_{l,nu}) r_{nu,mu}
    for (int mu = l - 1; mu >= 0; --mu) {
      Laurent s;
      for (int nu = mu + 1; nu <= l; ++nu) {
        if (!cb.p.m(l, nu).is_zero() && !r.m(nu, mu).is_zero()) s += cb.p.m(l, nu).bar() * r.m(nu, mu);
      }
      if (s.bar() != -s) {
        throw Error(ErrorKind::NoSolution, "entry " + class_pair(type, r.classes[l], r.classes[mu]) +
                                               ": right-hand side " + s.str() + " is not bar-antisymmetric");
      }
      cb.p.m(l, mu) = s.positive_part();
    }
  }
  cb.q.role = 'Q';
  cb.q.classes = r.classes;
  cb.q.m = unitriangular_inverse(cb.p.m);
  return cb;
}

std::string check_involution(const TransitionMatrix& r) {
  if (!is_identity(multiply(r.m, bar(r.m)))) return "R * bar(R) is not the identity";
  return {};
}

std::string check_triangular(const QuiverType& type, const TransitionMatrix& m) {
  const int n = static_cast<int>(m.classes.size());
  for (int i = 0; i < n; ++i) {
    if (m.m(i, i) != Laurent(1)) {
      return std::string("diagonal entry of ") + m.role + " at " + type.name(m.classes[i]) + " is " + m.m(i, i).str();
    }
    for (int j = 0; j < n; ++j) {
      if (i == j || m.m(i, j).is_zero()) continue;
      if (!degeneration_leq(type, m.classes[j], m.classes[i])) {
        return std::string("nonzero entry of ") + m.role + " at " + class_pair(type, m.classes[i], m.classes[j]) +
               " outside the degeneration order";
      }
    }
  }
  return {};
}

std::string check_corollary(const QuiverType& type, const CanonicalBasis& cb) {
  for (const TransitionMatrix* m : {&cb.p, &cb.q}) {
    std::string t = check_triangular(type, *m);
    if (!t.empty()) return t;
  }
  const auto& p = cb.p;
  const int n = static_cast<int>(p.classes.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || p.m(i, j).is_zero()) continue;
      const std::string at = class_pair(type, p.classes[i], p.classes[j]);
      if (p.m(i, j).min_exponent() < 1) return "p" + at + " = " + p.m(i, j).str() + " is not in vZ[w, v]";
      const int shift = type.orbit_dim(p.classes[j]) - type.orbit_dim(p.classes[i]);
      for (const auto& [k, c] : p.m(i, j).terms()) {
        if (((k - shift) % 2 + 2) % 2 != 0 || k < shift) {
          return "p" + at + " = " + p.m(i, j).str() + " is not in v^" + std::to_string(shift) + " Z[w, v^2]";
        }
      }
    }
  }
  if (!is_identity(multiply(cb.p.m, cb.q.m))) return "P * Q is not the identity";
  return {};
}

std::string check_bar_fixed(const TransitionMatrix& r, const CanonicalBasis& cb) {
  // bar(b_l) = sum_m bar(p_lm) bar(pbw_m) = (bar(P) R)_l
  if (multiply(bar(cb.p.m), r.m) != cb.p.m) return "some b_l is not bar-fixed";
  return {};
}

bool has_omega(const LaurentMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j).has_omega()) return true;
    }
  }
  return false;
}

std::string compare_matrices(const TransitionMatrix& a, const TransitionMatrix& b) {
  if (a.classes.size() != b.classes.size()) return "matrices index different class sets";
  for (const auto& x : a.classes) {
    if (b.index_of(x) < 0) return "matrices index different class sets";
    for (const auto& y : a.classes) {
      if (a.at(x, y) != b.at(x, y)) {
        return "entry differs: " + a.at(x, y).str() + " vs " + b.at(x, y).str();
      }
    }
  }
  return {};
}

namespace {

std::vector<QuadSurd> eval(const Laurent& x, const QuadSurd& at) {
  auto v = x.evaluate(at);
  while (!v.empty() && v.back().is_zero()) v.pop_back();
  return v;
}

void accumulate(std::vector<QuadSurd>& acc, const std::vector<QuadSurd>& a, const QuadSurd& scale) {
  if (acc.size() < a.size()) acc.resize(a.size(), QuadSurd::integer(0, scale.radicand()));
  for (size_t k = 0; k < a.size(); ++k) acc[k] = acc[k] + a[k] * scale;
}

}  // namespace

void bar_pbw_identity(const QuiverType& type, const TransitionMatrix& r, const CanonicalBasis& cb, long long q) {
  const int n = static_cast<int>(r.classes.size());
  const QuadSurd root = QuadSurd(Rational(0), Rational(-1), q);  // -sqrt q
  const QuadSurd inv = root.inverse();                          // -1/sqrt q
  const bool omega = has_omega(cb.p.m) || has_omega(cb.q.m);
  for (int l = 0; l < n; ++l) {
    const int dl = type.orbit_dim(r.classes[l]);
    for (int l2 = 0; l2 < n; ++l2) {
      const int dl2 = type.orbit_dim(r.classes[l2]);
      // left: bar(u_l) coefficient v^{d_l + d_l''} r_{l l''} at v = -1/sqrt q
      auto lhs = eval(r.m(l, l2).shifted(dl + dl2), inv);
      std::vector<QuadSurd> rhs;
      const QuadSurd outer = root.pow(-dl - dl2);
      for (int l1 = 0; l1 < n; ++l1) {
        if (cb.q.m(l, l1).is_zero() || cb.p.m(l1, l2).is_zero()) continue;
        if (omega) {
          accumulate(rhs, eval(cb.q.m(l, l1).bar() * cb.p.m(l1, l2), inv), outer);
          continue;
        }
        auto qv = eval(cb.q.m(l, l1), root);
        auto pv = eval(cb.p.m(l1, l2), inv);
        if (qv.empty() || pv.empty()) continue;
        accumulate(rhs, {qv[0] * pv[0]}, outer);
      }
      while (!rhs.empty() && rhs.back().is_zero()) rhs.pop_back();
      if (!(lhs == rhs)) {
        std::string ls = lhs.empty() ? "0" : lhs[0].str();
        std::string rs = rhs.empty() ? "0" : rhs[0].str();
        throw Error(ErrorKind::IdentityFailed, "bar-PBW identity fails at q=" + std::to_string(q) + " for " +
                                                   class_pair(type, r.classes[l], r.classes[l2]) + ": " + ls +
                                                   " vs " + rs);
      }
    }
  }
}

namespace {

// F_q-dimension of the representation space: an upper bound for dim E_N.
int rep_space_dim(const QuiverType& type, const DimVector& nu) {
  int d = 0;
  for (const auto& h : type.cartan().arrow_orbits) d += h.size * nu[h.src] * nu[h.tgt];
  return d;
}

}  // namespace

HallPolynomial slice_polynomial(const HallEngine& engine, const ModuleClass& M, const ModuleClass& N) {
  return certify_polynomial([&](long long q) { return engine.slice_count(N, M, q); },
                            rep_space_dim(engine.type(), N.dim),
                            "e[" + engine.type().name(M) + "|" + engine.type().name(N) + "]");
}

void slice_bar_check(const HallEngine& engine, const TransitionMatrix& r) {
  const QuiverType& type = engine.type();
  if (r.classes.empty()) return;
  std::map<std::pair<ModuleClass, long long>, std::map<ModuleClass, i128>> tables;
  auto count = [&](const ModuleClass& M, const ModuleClass& N, long long q) -> i128 {
    auto key = std::make_pair(N, q);
    auto it = tables.find(key);
    if (it == tables.end()) it = tables.emplace(key, engine.slice_table(N, q)).first;
    auto jt = it->second.find(M);
    return jt == it->second.end() ? 0 : jt->second;
  };
  const int cap = rep_space_dim(type, r.classes.front().dim);
  for (const auto& M : r.classes) {
    for (const auto& N : r.classes) {
      HallPolynomial e = certify_polynomial([&](long long q) { return count(M, N, q); }, cap,
                                            "e[" + type.name(M) + "|" + type.name(N) + "]");
      Laurent expected = e.poly.to_laurent(2).shifted(type.orbit_dim(N) - type.orbit_dim(M));
      if (expected != r.at(M, N)) {
        throw Error(ErrorKind::IdentityFailed, "slice entry " + class_pair(type, M, N) + ": e = " + e.poly.str() +
                                                   " gives " + expected.str() + ", R has " + r.at(M, N).str());
      }
    }
  }
}

}  // namespace hallbasis
