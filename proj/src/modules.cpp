#include "hallbasis/modules.hpp"

#include "hallbasis/error.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace hallbasis {

namespace {

constexpr int kMaxTotalDim = 12;
constexpr size_t kMaxClasses = 20000;
constexpr int kMaxRealizeAttempts = 20000;

std::string root_name(const DimVector& r) {
  int lo = -1;
  int hi = -1;
  bool ones = true;
  for (int i = 0; i < static_cast<int>(r.size()); ++i) {
    if (r[i] == 0) continue;
    if (r[i] != 1) ones = false;
    if (lo < 0) lo = i;
    hi = i;
  }
  bool contiguous = ones && lo >= 0;
  for (int i = lo; contiguous && i <= hi; ++i) contiguous = r[i] == 1;
  if (contiguous && lo == hi) return "S" + std::to_string(lo + 1);
  if (contiguous) {
    std::string s = "P";
    for (int i = lo; i <= hi; ++i) s += std::to_string(i + 1);
    return s;
  }
  std::string s = "[";
  for (size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "]";
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::vector<DimVector> positive_roots(const FoldedCartan& c) {
  const int r = c.rank();
  std::set<DimVector> found;
  std::vector<DimVector> queue;
  for (int i = 0; i < r; ++i) {
    DimVector a(r, 0);
    a[i] = 1;
    found.insert(a);
    queue.push_back(a);
  }
  for (size_t k = 0; k < queue.size(); ++k) {
    if (found.size() > 1000) throw Error(ErrorKind::NotFiniteType, "reflection closure does not terminate");
    for (int i = 0; i < r; ++i) {
      DimVector b = queue[k];
      int pairing = 0;
      for (int j = 0; j < r; ++j) pairing += c.cartan(i, j) * b[j];
      b[i] -= pairing;
      bool positive = std::all_of(b.begin(), b.end(), [](int x) { return x >= 0; });
      bool nonzero = std::any_of(b.begin(), b.end(), [](int x) { return x != 0; });
      if (positive && nonzero && found.insert(b).second) queue.push_back(b);
    }
  }
  return {found.begin(), found.end()};
}

QuiverType::QuiverType(QuiverWithAutomorphism q) : quiver_(std::move(q)) {
  ValidationReport rep = validate_admissible(quiver_);
  if (!rep.ok) throw Error(ErrorKind::NotFiniteType, "inadmissible quiver: " + rep.violations.front());
  cartan_ = fold(quiver_);
  std::vector<DimVector> lex = positive_roots(cartan_);
  const int m = static_cast<int>(lex.size());
  std::vector<int> ends(m);
  for (int t = 0; t < m; ++t) ends[t] = euler(lex[t], lex[t]);

  const SpeciesContext& ctx = context(2);
  std::vector<SpeciesRep> reps;
  for (int t = 0; t < m; ++t) reps.push_back(realize_root(ctx, lex[t], ends[t]));
  Eigen::MatrixXi h(m, m);
  for (int s = 0; s < m; ++s) {
    for (int t = 0; t < m; ++t) h(s, t) = hallbasis::hom_dim(ctx, reps[s], reps[t]);
  }
  // Kahn's algorithm, smallest lexicographic root first.
  std::vector<int> indeg(m, 0);
  for (int s = 0; s < m; ++s) {
    for (int t = 0; t < m; ++t) {
      if (s != t && h(s, t) != 0) ++indeg[t];
    }
  }
  std::vector<int> order;
  std::vector<bool> used(m, false);
  for (int step = 0; step < m; ++step) {
    int pick = -1;
    for (int t = 0; t < m; ++t) {
      if (!used[t] && indeg[t] == 0) {
        pick = t;
        break;
      }
    }
    if (pick < 0) throw Error(ErrorKind::CycleDetected, "hom relation among indecomposables has a cycle");
    used[pick] = true;
    order.push_back(pick);
    for (int t = 0; t < m; ++t) {
      if (t != pick && h(pick, t) != 0) --indeg[t];
    }
  }
  hom_.resize(m, m);
  for (int a = 0; a < m; ++a) {
    Root r;
    r.coords = lex[order[a]];
    r.end_dim = ends[order[a]];
    r.name = root_name(r.coords);
    roots_.push_back(r);
    for (int b = 0; b < m; ++b) hom_(a, b) = h(order[a], order[b]);
  }
  for (int a = 0; a < m; ++a) {
    std::lock_guard<std::mutex> lock(mu_);
    reps_[{a, 2}] = std::make_unique<SpeciesRep>(reps[order[a]]);
  }
}

std::shared_ptr<const QuiverType> QuiverType::get(const std::string& label) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const QuiverType>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[label];
  if (!slot) slot = std::make_shared<const QuiverType>(catalog(label));
  return slot;
}

int QuiverType::euler(const DimVector& a, const DimVector& b) const {
  int s = 0;
  for (int i = 0; i < cartan_.rank(); ++i) s += cartan_.orbit_sizes[i] * a[i] * b[i];
  for (const auto& h : cartan_.arrow_orbits) s -= h.size * a[h.src] * b[h.tgt];
  return s;
}

ModuleClass QuiverType::zero() const {
  ModuleClass m;
  m.mult.assign(roots_.size(), 0);
  m.dim.assign(rank(), 0);
  return m;
}

ModuleClass QuiverType::indecomposable(int t, int mult) const {
  ModuleClass m = zero();
  m.mult[t] = mult;
  for (int i = 0; i < rank(); ++i) m.dim[i] = mult * roots_[t].coords[i];
  return m;
}

ModuleClass QuiverType::sum(const ModuleClass& a, const ModuleClass& b) const {
  ModuleClass m = a;
  for (size_t t = 0; t < m.mult.size(); ++t) m.mult[t] += b.mult[t];
  for (size_t i = 0; i < m.dim.size(); ++i) m.dim[i] += b.dim[i];
  return m;
}

std::vector<ModuleClass> QuiverType::enumerate_modules(const DimVector& nu) const {
  if (static_cast<int>(nu.size()) != rank()) throw Error(ErrorKind::DimensionMismatch, "dimension vector has wrong rank");
  int total = 0;
  for (int x : nu) {
    if (x < 0) throw Error(ErrorKind::DimensionMismatch, "negative dimension");
    total += x;
  }
  if (total > kMaxTotalDim) throw Error(ErrorKind::SizeLimitExceeded, "dimension vector too large");
  std::vector<ModuleClass> out;
  ModuleClass cur = zero();
  DimVector rest = nu;
  std::function<void(int)> rec = [&](int t) {
    if (t == num_roots()) {
      if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) {
        cur.dim = nu;
        out.push_back(cur);
        if (out.size() > kMaxClasses) throw Error(ErrorKind::SizeLimitExceeded, "too many module classes");
      }
      return;
    }
    const DimVector& r = roots_[t].coords;
    int cap = 1 << 20;
    for (int i = 0; i < rank(); ++i) {
      if (r[i] > 0) cap = std::min(cap, rest[i] / r[i]);
    }
    for (int k = 0; k <= cap; ++k) {
      cur.mult[t] = k;
      for (int i = 0; i < rank(); ++i) rest[i] -= k * r[i];
      rec(t + 1);
      for (int i = 0; i < rank(); ++i) rest[i] += k * r[i];
    }
    cur.mult[t] = 0;
  };
  rec(0);
  // graded lexicographic: fewer summands first, then multiplicity vectors
  std::sort(out.begin(), out.end(), [](const ModuleClass& a, const ModuleClass& b) {
    int sa = 0;
    int sb = 0;
    for (int x : a.mult) sa += x;
    for (int x : b.mult) sb += x;
    if (sa != sb) return sa < sb;
    return a.mult > b.mult;
  });
  return out;
}

int QuiverType::hom_dim(const ModuleClass& m, const ModuleClass& n) const {
  int s = 0;
  for (int a = 0; a < num_roots(); ++a) {
    if (m.mult[a] == 0) continue;
    for (int b = 0; b < num_roots(); ++b) s += m.mult[a] * n.mult[b] * hom_(a, b);
  }
  return s;
}

int QuiverType::group_dim(const DimVector& nu) const {
  int s = 0;
  for (int i = 0; i < rank(); ++i) s += cartan_.orbit_sizes[i] * nu[i] * nu[i];
  return s;
}

int QuiverType::orbit_dim(const ModuleClass& m) const { return group_dim(m.dim) - end_dim(m); }

IntPoly QuiverType::aut_poly(const ModuleClass& m) const {
  int rad = end_dim(m);
  IntPoly r = IntPoly::constant(1);
  for (int t = 0; t < num_roots(); ++t) {
    if (m.mult[t] == 0) continue;
    rad -= m.mult[t] * m.mult[t] * roots_[t].end_dim;
    r = r * gl_order(m.mult[t], roots_[t].end_dim);
  }
  std::vector<long long> qr(rad + 1, 0);
  qr[rad] = 1;
  return r * IntPoly(qr);
}

std::string QuiverType::name(const ModuleClass& m) const {
  std::string s;
  for (int t = 0; t < num_roots(); ++t) {
    if (m.mult[t] == 0) continue;
    if (!s.empty()) s += " + ";
    s += roots_[t].name;
    if (m.mult[t] > 1) s += "^" + std::to_string(m.mult[t]);
  }
  return s.empty() ? "0" : s;
}

ModuleClass QuiverType::parse(const std::string& text) const {
  std::string t = text;
  const std::string oplus = "\xE2\x8A\x95";
  for (size_t pos; (pos = t.find(oplus)) != std::string::npos;) t.replace(pos, oplus.size(), "+");
  ModuleClass m = zero();
  std::stringstream ss(t);
  std::string token;
  bool any = false;
  while (std::getline(ss, token, '+')) {
    token = trim(token);
    if (token.empty()) throw Error(ErrorKind::ParseError, "empty summand in '" + text + "'");
    any = true;
    if (token == "0") continue;
    int mult = 1;
    size_t caret = token.find('^');
    std::string base = token;
    if (caret != std::string::npos) {
      base = trim(token.substr(0, caret));
      try {
        mult = std::stoi(token.substr(caret + 1));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad multiplicity in '" + token + "'");
      }
      if (mult < 0) throw Error(ErrorKind::ParseError, "negative multiplicity in '" + token + "'");
    }
    int found = -1;
    for (int r = 0; r < num_roots(); ++r) {
      if (roots_[r].name == base) found = r;
    }
    if (found < 0) throw Error(ErrorKind::ParseError, "unknown indecomposable '" + base + "' for type " + label());
    m = sum(m, indecomposable(found, mult));
  }
  if (!any) throw Error(ErrorKind::ParseError, "empty module class");
  return m;
}

const SpeciesContext& QuiverType::context(long long q) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = contexts_[q];
  if (!slot) slot = std::make_unique<SpeciesContext>(cartan_, q);
  return *slot;
}

SpeciesRep QuiverType::realize_root(const SpeciesContext& ctx, const DimVector& root, int end_dim) const {
  // Seed depends only on the root and q so realizations do not depend on call order.
  std::uint64_t seed = 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(ctx.q());
  for (int x : root) seed = seed * 1000003ULL + static_cast<std::uint64_t>(x);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxRealizeAttempts; ++attempt) {
    SpeciesRep r = random_rep(ctx, root, rng);
    if (hallbasis::hom_dim(ctx, r, r) == end_dim) return r;
  }
  throw Error(ErrorKind::UnsupportedFieldSize, "could not realize indecomposable over F_" + std::to_string(ctx.q()));
}

const SpeciesRep& QuiverType::realize_indecomposable(int t, long long q) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = reps_.find({t, q});
    if (it != reps_.end()) return *it->second;
  }
  const SpeciesContext& ctx = context(q);
  auto rep = std::make_unique<SpeciesRep>(realize_root(ctx, roots_[t].coords, roots_[t].end_dim));
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = reps_[{t, q}];
  if (!slot) slot = std::move(rep);
  return *slot;
}

SpeciesRep QuiverType::realize(const ModuleClass& m, long long q) const {
  SpeciesRep r = zero_rep(context(q), DimVector(rank(), 0));
  for (int t = 0; t < num_roots(); ++t) {
    for (int k = 0; k < m.mult[t]; ++k) r = direct_sum(r, realize_indecomposable(t, q));
  }
  return r;
}

ModuleClass QuiverType::classify(const SpeciesContext& ctx, const SpeciesRep& x) const {
  const int m = num_roots();
  std::vector<int> fp(m);
  std::vector<int> need(m, 1);
  // hom(I_t, X) = 0 unless some summand I_s of X has hom(I_t, I_s) != 0; any
  // summand I_s satisfies root_s <= dim X, which prunes I_t with no such s.
  for (int t = 0; t < m; ++t) {
    bool possible = false;
    for (int s = t; s < m && !possible; ++s) {
      if (hom_(t, s) == 0) continue;
      bool fits = true;
      for (int i = 0; i < rank(); ++i) fits = fits && roots_[s].coords[i] <= x.dim[i];
      possible = fits;
    }
    need[t] = possible ? 1 : 0;
  }
  for (int t = 0; t < m; ++t) {
    fp[t] = need[t] ? hallbasis::hom_dim(ctx, realize_indecomposable(t, ctx.q()), x) : 0;
  }
  ModuleClass out = zero();
  for (int t = m - 1; t >= 0; --t) {
    int v = fp[t];
    for (int s = t + 1; s < m; ++s) v -= hom_(t, s) * out.mult[s];
    if (v < 0 || v % roots_[t].end_dim != 0) {
      throw Error(ErrorKind::IdentityFailed, "hom fingerprint is not realizable");
    }
    out.mult[t] = v / roots_[t].end_dim;
  }
  out.dim.assign(rank(), 0);
  for (int t = 0; t < m; ++t) {
    for (int i = 0; i < rank(); ++i) out.dim[i] += out.mult[t] * roots_[t].coords[i];
  }
  if (out.dim != x.dim) throw Error(ErrorKind::IdentityFailed, "classified class has the wrong dimension");
  return out;
}

}  // namespace hallbasis
