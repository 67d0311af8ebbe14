#include "hallbasis/verify.hpp"

#include "hallbasis/error.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace hallbasis {

std::string format_result(const CheckResult& r) {
  std::string s = r.pass ? "PASS" : "FAIL";
  if (r.criterion > 0) s += " [" + std::to_string(r.criterion) + "]";
  s += " " + r.name;
  if (!r.detail.empty()) s += ": " + r.detail;
  return s;
}

std::vector<DimVector> dims_up_to(const std::vector<int>& weights, int max_total) {
  const int rank = static_cast<int>(weights.size());
  auto total = [&](const DimVector& d) {
    int s = 0;
    for (int i = 0; i < rank; ++i) s += weights[i] * d[i];
    return s;
  };
  std::vector<DimVector> out;
  DimVector cur(rank, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == rank) {
      if (left < max_total) out.push_back(cur);
      return;
    }
    for (int x = 0; x * weights[i] <= left; ++x) {
      cur[i] = x;
      rec(i + 1, left - x * weights[i]);
    }
    cur[i] = 0;
  };
  rec(0, max_total);
  std::sort(out.begin(), out.end(), [&](const DimVector& a, const DimVector& b) {
    const int sa = total(a), sb = total(b);
    return sa != sb ? sa < sb : a < b;
  });
  return out;
}

std::vector<DimVector> dims_up_to(const QuiverType& type, int max_total) {
  return dims_up_to(type.cartan().orbit_sizes, max_total);
}

std::vector<DimVector> bar_scope(const QuiverType& type) {
  if (type.label() == "G2") {
    std::vector<DimVector> out;
    for (const auto& nu : dims_up_to(std::vector<int>(type.rank(), 1), 3)) {
      if (type.enumerate_modules(nu).size() <= 2) out.push_back(nu);
    }
    return out;
  }
  return dims_up_to(type, 4);
}

Workspace::Workspace(PolyCache* cache, int jobs) : cache_(cache), jobs_(jobs) {
  if (!cache_) {
    own_cache_ = std::make_unique<PolyCache>();
    cache_ = own_cache_.get();
  }
}

const HallEngine& Workspace::engine(const std::string& label) {
  auto& slot = engines_[label];
  if (!slot) slot = std::make_unique<HallEngine>(QuiverType::get(label), cache_);
  return *slot;
}

const BarData& Workspace::bar(const std::string& label, const DimVector& nu) {
  auto& slot = bars_[{label, nu}];
  if (!slot) {
    const HallEngine& e = engine(label);
    auto data = std::make_unique<BarData>();
    data->oracle = bar_matrix_oracle(e, nu);
    data->gs = select_direction(e, nu, data->oracle.r);
    data->cb = canonical_basis(e.type(), data->oracle.r);
    slot = std::move(data);
  }
  return *slot;
}

namespace {

std::string dim_str(const DimVector& nu) {
  std::string s = "(";
  for (size_t i = 0; i < nu.size(); ++i) s += (i ? "," : "") + std::to_string(nu[i]);
  return s + ")";
}

struct Scope {
  std::string label;
  int max_total;
};

// Desk scale for Hall polynomials and structure constants.
const std::vector<Scope>& hall_scope() {
  static const std::vector<Scope> s{{"A2", 5}, {"A3", 4}, {"B2", 4}};
  return s;
}

// Calls f(L, M, N) for every triple with dim L = dim M + dim N and L nonzero.
void for_each_triple(const QuiverType& type, int max_total,
                     const std::function<void(const ModuleClass&, const ModuleClass&, const ModuleClass&)>& f) {
  std::vector<DimVector> subs = dims_up_to(type, max_total);
  subs.insert(subs.begin(), DimVector(type.rank(), 0));
  for (const auto& nu : dims_up_to(type, max_total)) {
    for (const auto& n : subs) {
      DimVector m(nu.size());
      bool ok = true;
      for (size_t i = 0; i < nu.size(); ++i) {
        m[i] = nu[i] - n[i];
        ok = ok && m[i] >= 0;
      }
      if (!ok) continue;
      for (const auto& L : type.enumerate_modules(nu)) {
        for (const auto& N : type.enumerate_modules(n)) {
          for (const auto& M : type.enumerate_modules(m)) f(L, M, N);
        }
      }
    }
  }
}

}  // namespace

CheckResult check_hall_existence(Workspace& ws) {
  CheckResult r{1, "Hall polynomials certified against brute-force counts", true, ""};
  std::string detail;
  for (const auto& sc : hall_scope()) {
    const HallEngine& e = ws.engine(sc.label);
    const QuiverType& type = e.type();
    if (ws.jobs() > 1) {
      std::vector<ModuleClass> ls;
      for (const auto& nu : dims_up_to(type, sc.max_total)) {
        for (const auto& L : type.enumerate_modules(nu)) ls.push_back(L);
      }
      e.prefetch(ls, {2, 3, 4, 5}, ws.jobs());
    }
    long long triples = 0;
    int max_degree = 0;
    for_each_triple(type, sc.max_total, [&](const ModuleClass& L, const ModuleClass& M, const ModuleClass& N) {
      if (!r.pass) return;
      ++triples;
      try {
        HallPolynomial hp = e.hall_polynomial(L, M, N);
        max_degree = std::max(max_degree, hp.poly.degree());
        if (hp.heldout.size() < 2 && !hp.samples.empty()) {
          r.pass = false;
          r.detail = "fewer than two held-out points for " + e.cache_key(L, M, N);
          return;
        }
        // recount the first two held-out points directly
        std::vector<long long> pts = hp.heldout;
        if (pts.empty()) pts = {2, 3};
        for (size_t k = 0; k < 2 && k < pts.size(); ++k) {
          long long q = pts[k];
          if (hp.poly.evaluate(q) != e.hall_number(L, M, N, q)) {
            r.pass = false;
            r.detail = "mismatch at q=" + std::to_string(q) + " for " + e.cache_key(L, M, N);
            return;
          }
        }
      } catch (const Error& err) {
        r.pass = false;
        r.detail = err.what();
      }
    });
    if (!r.pass) return r;
    detail += (detail.empty() ? "" : ", ") + sc.label + " " + std::to_string(triples) + " triples (max degree " +
              std::to_string(max_degree) + ")";
  }
  r.detail = detail;
  return r;
}

CheckResult check_seed_counts(Workspace& ws) {
  CheckResult r{2, "seed Hall numbers in A2", true, ""};
  const HallEngine& e = ws.engine("A2");
  const QuiverType& t = e.type();
  const ModuleClass P = t.parse("P12"), S1 = t.parse("S1"), S2 = t.parse("S2"), SS = t.parse("S1^2");
  for (long long q : {2, 3, 4}) {
    long long a = e.hall_number(P, S1, S2, q);
    long long b = e.hall_number(P, S2, S1, q);
    long long c = e.hall_number(SS, S1, S1, q);
    if (a != 1 || b != 0 || c != q + 1) {
      r.pass = false;
      r.detail = "q=" + std::to_string(q) + ": got " + std::to_string(a) + ", " + std::to_string(b) + ", " +
                 std::to_string(c);
      return r;
    }
  }
  const bool polys = e.hall_polynomial(P, S1, S2).poly == IntPoly::constant(1) &&
                     e.hall_polynomial(P, S2, S1).poly.is_zero() &&
                     e.hall_polynomial(SS, S1, S1).poly == IntPoly({1, 1});
  if (!polys) {
    r.pass = false;
    r.detail = "interpolated polynomials differ from 1, 0, q + 1";
    return r;
  }
  r.detail = "g(P12;S1,S2) = 1, g(P12;S2,S1) = 0, g(S1^2;S1,S1) = q + 1 at q = 2, 3, 4";
  return r;
}

CheckResult check_structure_constants(Workspace& ws) {
  CheckResult r{3, "structure constants are Laurent over Z[w]; associativity", true, ""};
  std::string detail;
  for (const auto& sc : hall_scope()) {
    const HallEngine& e = ws.engine(sc.label);
    const QuiverType& type = e.type();
    HallAlgebra alg(e, select_twist(e).twist);
    std::vector<ModuleClass> classes;
    std::vector<int> totals;
    for (const auto& nu : dims_up_to(type, sc.max_total)) {
      int s = 0;
      for (int i = 0; i < type.rank(); ++i) s += type.cartan().orbit_sizes[i] * nu[i];
      for (const auto& c : type.enumerate_modules(nu)) {
        classes.push_back(c);
        totals.push_back(s);
      }
    }
    long long constants = 0;
    long long omega = 0;
    long long triples = 0;
    try {
      for (size_t a = 0; a < classes.size(); ++a) {
        for (size_t b = 0; b < classes.size(); ++b) {
          if (totals[a] + totals[b] > sc.max_total) continue;
          for (const auto& [l, h] : alg.structure_constants(classes[a], classes[b])) {
            ++constants;
            if (h.has_omega()) ++omega;
          }
          for (size_t c = 0; c < classes.size(); ++c) {
            if (totals[a] + totals[b] + totals[c] > sc.max_total) continue;
            ++triples;
            AlgebraElement x = AlgebraElement::basis(classes[a]);
            AlgebraElement y = AlgebraElement::basis(classes[b]);
            AlgebraElement z = AlgebraElement::basis(classes[c]);
            if (!(alg.multiply(alg.multiply(x, y), z) == alg.multiply(x, alg.multiply(y, z)))) {
              r.pass = false;
              r.detail = sc.label + ": associativity fails for (" + type.name(classes[a]) + ", " +
                         type.name(classes[b]) + ", " + type.name(classes[c]) + ")";
              return r;
            }
          }
        }
      }
    } catch (const Error& err) {
      r.pass = false;
      r.detail = err.what();
      return r;
    }
    detail += (detail.empty() ? "" : ", ") + sc.label + " " + std::to_string(constants) + " constants (" +
              std::to_string(omega) + " with w), " + std::to_string(triples) + " triples";
  }
  r.detail = detail;
  return r;
}

CheckResult check_folding() {
  CheckResult r{9, "folding of B2 and G2", true, ""};
  struct Expect {
    std::string label;
    Eigen::MatrixXi cartan;
    std::vector<int> sym;
    size_t roots;
  };
  Eigen::MatrixXi b2(2, 2), g2(2, 2);
  b2 << 2, -1, -2, 2;
  g2 << 2, -3, -1, 2;
  for (const Expect& x : {Expect{"B2", b2, {2, 1}, 4}, Expect{"G2", g2, {1, 3}, 6}}) {
    FoldedCartan c = fold(catalog(x.label));
    const size_t roots = positive_roots(c).size();
    if (c.cartan != x.cartan || c.orbit_sizes != x.sym || roots != x.roots || c.type_label != x.label) {
      r.pass = false;
      r.detail = x.label + " folds to type " + c.type_label + " with " + std::to_string(roots) + " roots";
      return r;
    }
  }
  r.detail = "B2 [[2,-1],[-2,2]] s=(2,1) 4 roots; G2 [[2,-3],[-1,2]] s=(1,3) 6 roots";
  return r;
}

namespace {

const std::vector<std::string>& bar_types() {
  static const std::vector<std::string> t{"A2", "A3", "B2", "G2"};
  return t;
}

// Runs f on every (type, nu) in the bar scope; f returns an error text or "".
CheckResult over_bar_scope(Workspace& ws, CheckResult r,
                           const std::function<std::string(const std::string&, const DimVector&, const BarData&)>& f) {
  std::string detail;
  for (const auto& label : bar_types()) {
    const QuiverType& type = ws.engine(label).type();
    int count = 0;
    for (const auto& nu : bar_scope(type)) {
      std::string why;
      try {
        why = f(label, nu, ws.bar(label, nu));
      } catch (const Error& e) {
        why = e.what();
      }
      if (!why.empty()) {
        r.pass = false;
        r.detail = label + " " + dim_str(nu) + ": " + why;
        return r;
      }
      ++count;
    }
    detail += (detail.empty() ? "" : ", ") + label + " " + std::to_string(count) + " dims";
  }
  r.pass = true;
  r.detail = detail;
  return r;
}

}  // namespace

CheckResult check_involutivity(Workspace& ws) {
  return over_bar_scope(ws, {4, "bar matrix is an involution", true, ""},
                        [&](const std::string&, const DimVector&, const BarData& d) {
                          std::string why = check_involution(d.oracle.r);
                          if (why.empty()) why = check_involution(d.gs.r);
                          return why;
                        });
}

CheckResult check_corollary_properties(Workspace& ws) {
  long long omega = 0;
  CheckResult r = over_bar_scope(
      ws, {5, "P is unitriangular with vZ[w,v] entries of the right parity", true, ""},
      [&](const std::string& label, const DimVector& nu, const BarData& d) {
        const HallEngine& e = ws.engine(label);
        std::string why = check_corollary(e.type(), d.cb);
        if (why.empty()) why = check_bar_fixed(d.oracle.r, d.cb);
        if (!why.empty()) return why;
        if (has_omega(d.cb.p.m)) ++omega;
        // uniqueness makes P independent of the tie-break in the linear extension
        OracleResult rev = bar_matrix_oracle(e, nu, true);
        CanonicalBasis cb = canonical_basis(e.type(), rev.r);
        why = compare_matrices(cb.p, d.cb.p);
        if (!why.empty()) return "reversed tie-break changes P: " + why;
        return std::string();
      });
  if (r.pass) r.detail += "; " + std::to_string(omega) + " P matrices depend on w";
  return r;
}

CheckResult check_route_agreement(Workspace& ws) {
  std::map<std::string, std::set<std::string>> chosen;
  CheckResult r = over_bar_scope(ws, {6, "filtration route agrees with the oracle", true, ""},
                                 [&](const std::string& label, const DimVector&, const BarData& d) {
                                   if (!d.gs.tie) chosen[label].insert(direction_name(d.gs.chosen));
                                   return std::string();
                                 });
  if (!r.pass) return r;
  std::string detail;
  for (const auto& label : bar_types()) {
    const auto& set = chosen[label];
    if (set.size() != 1) {
      r.pass = false;
      r.detail = label + ": no single winning direction";
      return r;
    }
    detail += (detail.empty() ? "" : ", ") + label + " " + *set.begin();
  }
  // regression guard: the literal top-first reading must fail on A2 (1,1)
  const BarData& a2 = ws.bar("A2", {1, 1});
  for (const auto& t : a2.gs.trials) {
    if (t.direction == FiltrationDirection::TopFirst && t.ok) {
      r.pass = false;
      r.detail = "top-first unexpectedly agrees on A2 (1,1)";
      return r;
    }
  }
  r.detail = detail + "; top-first fails on A2 (1,1)";
  return r;
}

CheckResult check_slice_identities(Workspace& ws) {
  CheckResult r{7, "slice and unipotent counting identities", true, ""};
  struct Case {
    std::string label;
    DimVector nu;
  };
  long long checked = 0;
  for (const Case& c : {Case{"A2", {1, 1}}, Case{"A2", {2, 1}}, Case{"A3", {1, 1, 1}}}) {
    const HallEngine& e = ws.engine(c.label);
    const QuiverType& type = e.type();
    const auto classes = type.enumerate_modules(c.nu);
    const FiltrationDirection dir = ws.bar(c.label, c.nu).gs.chosen;
    try {
      for (long long q : {2, 3}) {
        for (const auto& N : classes) {
          const auto layers = e.isotypic_layers(N);
          const auto slice = e.slice_table(N, q);
          const auto uni = e.unipotent_table(N, q);
          i128 prod_a = 1;
          for (const auto& layer : layers) prod_a *= type.aut_order(layer, q);
          for (const auto& M : classes) {
            const i128 f = e.filtration_count_direct(M, layers, dir, q);
            const i128 am = type.aut_order(M, q);
            auto get = [&](const std::map<ModuleClass, i128>& t) {
              auto it = t.find(M);
              return it == t.end() ? i128(0) : it->second;
            };
            const std::string at = c.label + " q=" + std::to_string(q) + " (" + type.name(M) + ", " + type.name(N) + ")";
            if (f * prod_a != am * get(slice)) {
              r.pass = false;
              r.detail = "slice identity fails at " + at;
              return r;
            }
            if (f * prod_a * uni.unipotent_order != am * get(uni.by_class)) {
              r.pass = false;
              r.detail = "unipotent identity fails at " + at;
              return r;
            }
            checked += 2;
          }
        }
      }
      slice_bar_check(e, ws.bar(c.label, c.nu).oracle.r);
    } catch (const Error& err) {
      r.pass = false;
      r.detail = c.label + " " + dim_str(c.nu) + ": " + err.what();
      return r;
    }
  }
  r.detail = std::to_string(checked) + " identities at q = 2, 3; slice polynomials reproduce R";
  return r;
}

CheckResult check_final_identity(Workspace& ws) {
  return over_bar_scope(ws, {8, "bar-PBW identity at q = 4, 9", true, ""},
                        [&](const std::string& label, const DimVector&, const BarData& d) {
                          for (long long q : {4, 9}) bar_pbw_identity(ws.engine(label).type(), d.oracle.r, d.cb, q);
                          return std::string();
                        });
}

CacheVerifyReport verify_cache(const PolyCache& cache, Workspace& ws, unsigned long long seed) {
  CacheVerifyReport rep;
  const auto records = cache.records();
  rep.total = records.size();
  const size_t k = (records.size() + 9) / 10;
  std::vector<size_t> idx(records.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  for (size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng() % (idx.size() - i)]);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  for (size_t i : idx) {
    const CacheRecord& rec = records[i];
    std::vector<std::string> parts;
    std::stringstream ss(rec.key);
    for (std::string part; std::getline(ss, part, '|');) parts.push_back(part);
    if (parts.size() != 4) throw Error(ErrorKind::CorruptCache, "malformed key " + rec.key);
    long long q = 0;
    for (long long p : prime_powers()) {
      const bool used = std::count(rec.samples.begin(), rec.samples.end(), p) ||
                        std::count(rec.heldout.begin(), rec.heldout.end(), p);
      if (!used) {
        q = p;
        break;
      }
    }
    long long count = 0;
    try {
      const HallEngine& e = ws.engine(parts[0]);
      const QuiverType& type = e.type();
      count = e.hall_number(type.parse(parts[1]), type.parse(parts[2]), type.parse(parts[3]), q);
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::ParseError || err.kind() == ErrorKind::UnknownType) {
        throw Error(ErrorKind::CorruptCache, "unreadable key " + rec.key + " (" + err.what() + ")");
      }
      throw;
    }
    if (IntPoly(rec.coeffs).evaluate(q) != count) {
      throw Error(ErrorKind::CorruptCache, "record " + rec.key + " disagrees with a recount at q=" + std::to_string(q));
    }
    rep.keys.push_back(rec.key);
    ++rep.checked;
  }
  return rep;
}

CheckResult check_cache(Workspace& ws, unsigned long long seed) {
  CheckResult r{10, "cache re-evaluation", true, ""};
  try {
    CacheVerifyReport rep = verify_cache(*ws.cache(), ws, seed);
    r.detail = std::to_string(rep.checked) + " of " + std::to_string(rep.total) + " records recounted";
  } catch (const Error& e) {
    r.pass = false;
    r.detail = e.what();
  }
  return r;
}

std::vector<CheckResult> run_suite(const std::string& suite, Workspace& ws) {
  using Fn = std::function<CheckResult()>;
  std::map<int, Fn> all{
      {1, [&] { return check_hall_existence(ws); }},
      {2, [&] { return check_seed_counts(ws); }},
      {3, [&] { return check_structure_constants(ws); }},
      {4, [&] { return check_involutivity(ws); }},
      {5, [&] { return check_corollary_properties(ws); }},
      {6, [&] { return check_route_agreement(ws); }},
      {7, [&] { return check_slice_identities(ws); }},
      {8, [&] { return check_final_identity(ws); }},
      {9, [&] { return check_folding(); }},
      {10, [&] { return check_cache(ws); }},
  };
  std::vector<int> ids;
  if (suite == "hall") ids = {1, 2, 3, 9};
  else if (suite == "slice") ids = {7};
  else if (suite == "bar") ids = {4, 6};
  else if (suite == "corollary") ids = {5, 8};
  else if (suite == "all") ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  else throw Error(ErrorKind::ParseError, "unknown suite '" + suite + "'");
  std::vector<CheckResult> out;
  for (int id : ids) {
    try {
      out.push_back(all.at(id)());
    } catch (const std::exception& e) {
      out.push_back({id, "criterion " + std::to_string(id), false, e.what()});
    }
  }
  return out;
}

}  // namespace hallbasis
