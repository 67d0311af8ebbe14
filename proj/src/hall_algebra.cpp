#include "hallbasis/hall_algebra.hpp"

#include "hallbasis/error.hpp"

#include <algorithm>

namespace hallbasis {

const char* twist_name(Twist t) {
  switch (t) {
    case Twist::Standard: return "standard";
    case Twist::Euler: return "euler";
    case Twist::Geometric: return "geometric";
  }
  return "?";
}

AlgebraElement AlgebraElement::basis(const ModuleClass& m, Laurent c) {
  AlgebraElement x;
  x.add(m, c);
  return x;
}

Laurent AlgebraElement::coeff(const ModuleClass& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Laurent() : it->second;
}

void AlgebraElement::add(const ModuleClass& m, const Laurent& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
  for (const auto& [m, c] : b.terms_) a.add(m, -c);
  return a;
}

AlgebraElement operator*(const Laurent& c, const AlgebraElement& x) {
  AlgebraElement r;
  for (const auto& [m, d] : x.terms_) r.add(m, c * d);
  return r;
}

HallAlgebra::HallAlgebra(const HallEngine& engine, Twist twist) : engine_(engine), twist_(twist) {}

int HallAlgebra::twist_exponent(const DimVector& a, const DimVector& b) const {
  switch (twist_) {
    case Twist::Standard: return -hallbasis::twist_exponent(type().quiver(), type().cartan(), a, b);
    case Twist::Euler: return type().euler(a, b);
    case Twist::Geometric: return hallbasis::twist_exponent(type().quiver(), type().cartan(), a, b);
  }
  return 0;
}

AlgebraElement HallAlgebra::unit() const { return AlgebraElement::basis(type().zero()); }

AlgebraElement HallAlgebra::product(const ModuleClass& a, const ModuleClass& b) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = products_.find({a, b});
    if (it != products_.end()) return it->second;
  }
  DimVector nu(a.dim.size());
  for (size_t i = 0; i < nu.size(); ++i) nu[i] = a.dim[i] + b.dim[i];
  const int e = twist_exponent(a.dim, b.dim);
  AlgebraElement out;
  for (const auto& l : type().enumerate_modules(nu)) {
    IntPoly g = engine_.hall_polynomial(l, a, b).poly;
    if (!g.is_zero()) out.add(l, g.to_laurent(-2).shifted(e));
  }
  std::lock_guard<std::mutex> lock(mu_);
  products_.emplace(std::make_pair(a, b), out);
  return out;
}

AlgebraElement HallAlgebra::multiply(const AlgebraElement& x, const AlgebraElement& y) const {
  AlgebraElement out;
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) out += (ca * cb) * product(a, b);
  }
  return out;
}

AlgebraElement HallAlgebra::pbw_class(const ModuleClass& m) const {
  return AlgebraElement::basis(m, Laurent::monomial(type().orbit_dim(m)));
}

std::map<ModuleClass, Laurent> HallAlgebra::structure_constants(const ModuleClass& a, const ModuleClass& b) const {
  std::map<ModuleClass, Laurent> out;
  const int da = type().orbit_dim(a);
  const int db = type().orbit_dim(b);
  const AlgebraElement ab = product(a, b);
  for (const auto& [l, c] : ab.terms()) {
    Laurent h = c.shifted(da + db - type().orbit_dim(l));
    if (!h.is_zero()) out.emplace(l, h);
  }
  return out;
}

namespace {
AlgebraElement rescale(const QuiverType& type, const AlgebraElement& x, int sign) {
  AlgebraElement r;
  for (const auto& [m, c] : x.terms()) r.add(m, c.shifted(sign * type.group_dim(m.dim)));
  return r;
}
}  // namespace

AlgebraElement HallAlgebra::standard_to_euler(const AlgebraElement& x) const { return rescale(type(), x, 1); }
AlgebraElement HallAlgebra::euler_to_standard(const AlgebraElement& x) const { return rescale(type(), x, -1); }

bool degeneration_leq(const QuiverType& type, const ModuleClass& a, const ModuleClass& b) {
  if (a.dim != b.dim) throw Error(ErrorKind::DimensionMismatch, "degeneration order compares equal dimension vectors");
  for (int t = 0; t < type.num_roots(); ++t) {
    ModuleClass x = type.indecomposable(t);
    if (type.hom_dim(x, a) < type.hom_dim(x, b)) return false;
  }
  return true;
}

std::vector<ModuleClass> linear_extension(const QuiverType& type, std::vector<ModuleClass> classes,
                                          bool reverse_ties) {
  std::sort(classes.begin(), classes.end(), [&](const ModuleClass& x, const ModuleClass& y) {
    int dx = type.orbit_dim(x);
    int dy = type.orbit_dim(y);
    if (dx != dy) return dx < dy;
    return reverse_ties ? y.mult < x.mult : x.mult < y.mult;
  });
  return classes;
}

}  // namespace hallbasis
