#include "hallbasis/quiver.hpp"

#include "hallbasis/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hallbasis {

namespace {

int perm_order(const std::vector<int>& perm) {
  int order = 1;
  std::vector<bool> seen(perm.size(), false);
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = static_cast<size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

bool is_permutation_of(const std::vector<int>& perm, size_t n) {
  if (perm.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (int x : perm) {
    if (x < 0 || static_cast<size_t>(x) >= n || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

std::vector<std::vector<int>> components(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (size_t k = 0; k < members.size(); ++k) {
      for (int t : adj[members[k]]) {
        if (comp[t] < 0) {
          comp[t] = comp[s];
          members.push_back(t);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

// Label of a simply-laced tree component, or empty if not Dynkin.
std::string simply_laced_label(const std::vector<int>& members, const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(members.size());
  int branch = -1;
  for (int v : members) {
    int deg = static_cast<int>(adj[v].size());
    if (deg > 3) return {};
    if (deg == 3) {
      if (branch >= 0) return {};
      branch = v;
    }
  }
  if (branch < 0) return "A" + std::to_string(n);
  std::vector<int> arms;
  for (int start : adj[branch]) {
    int len = 1;
    int prev = branch;
    int cur = start;
    while (adj[cur].size() == 2) {
      int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return "E" + std::to_string(n);
  return {};
}

}  // namespace

ValidationReport validate_admissible(const QuiverWithAutomorphism& q) {
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  const int n = q.num_vertices();
  for (const auto& a : q.arrows) {
    if (a.src < 0 || a.src >= n || a.tgt < 0 || a.tgt >= n) {
      fail("arrow " + a.id + ": endpoint is not a declared vertex");
      return rep;
    }
  }
  if (!is_permutation_of(q.vertex_perm, static_cast<size_t>(n))) {
    fail("vertex_perm is not a permutation of the vertices");
    return rep;
  }
  if (!is_permutation_of(q.arrow_perm, q.arrows.size())) {
    fail("arrow_perm is not a permutation of the arrows");
    return rep;
  }
  for (size_t h = 0; h < q.arrows.size(); ++h) {
    const Arrow& a = q.arrows[h];
    const Arrow& b = q.arrows[q.arrow_perm[h]];
    if (b.src != q.vertex_perm[a.src] || b.tgt != q.vertex_perm[a.tgt]) {
      fail("condition (a): arrow " + a.id + " is not mapped compatibly (image " + b.id + ")");
    }
  }
  // condition (b): no arrow inside an orbit
  std::vector<int> orbit_rep(n);
  for (int v = 0; v < n; ++v) {
    int m = v;
    for (int w = q.vertex_perm[v]; w != v; w = q.vertex_perm[w]) m = std::min(m, w);
    orbit_rep[v] = m;
  }
  for (const auto& a : q.arrows) {
    if (orbit_rep[a.src] == orbit_rep[a.tgt]) {
      fail("condition (b): arrow " + a.id + " joins vertices " + q.vertex_names[a.src] + " and " +
           q.vertex_names[a.tgt] + " of the same orbit");
    }
  }
  int order = std::lcm(perm_order(q.vertex_perm), perm_order(q.arrow_perm));
  if (q.period > 0 && q.period % order != 0) {
    fail("automorphism order " + std::to_string(order) + " does not divide period " + std::to_string(q.period));
  }
  // finite type: underlying graph is a union of ADE diagrams
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj(n);
  for (const auto& a : q.arrows) {
    if (a.src == a.tgt) {
      fail("finite type: arrow " + a.id + " is a loop");
      continue;
    }
    auto key = std::minmax(a.src, a.tgt);
    if (!seen.insert(key).second) {
      fail("finite type: multiple edges between " + q.vertex_names[a.src] + " and " + q.vertex_names[a.tgt]);
      continue;
    }
    edges.emplace_back(a.src, a.tgt);
    adj[a.src].push_back(a.tgt);
    adj[a.tgt].push_back(a.src);
  }
  for (const auto& comp : components(n, edges)) {
    size_t internal = 0;
    for (auto [a, b] : edges) {
      if (std::binary_search(comp.begin(), comp.end(), a)) ++internal;
      (void)b;
    }
    if (internal + 1 != comp.size() || simply_laced_label(comp, adj).empty()) {
      fail("finite type: component containing vertex " + q.vertex_names[comp[0]] + " is not an ADE diagram");
    }
  }
  return rep;
}

FoldedCartan fold(const QuiverWithAutomorphism& q) {
  const int n = q.num_vertices();
  FoldedCartan c;
  c.orbit_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (c.orbit_of[v] >= 0) continue;
    std::vector<int> orb{v};
    for (int w = q.vertex_perm[v]; w != v; w = q.vertex_perm[w]) orb.push_back(w);
    std::sort(orb.begin(), orb.end());
    for (int w : orb) c.orbit_of[w] = static_cast<int>(c.orbits.size());
    c.orbits.push_back(orb);
    c.orbit_sizes.push_back(static_cast<int>(orb.size()));
  }
  const int r = c.rank();
  Eigen::MatrixXi edges = Eigen::MatrixXi::Zero(r, r);
  for (const auto& a : q.arrows) {
    int i = c.orbit_of[a.src];
    int j = c.orbit_of[a.tgt];
    edges(i, j) += 1;
    if (i != j) edges(j, i) += 1;
  }
  c.cartan = Eigen::MatrixXi::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (i == j) {
        c.cartan(i, j) = 2;
        continue;
      }
      if (edges(i, j) % c.orbit_sizes[i] != 0) {
        throw Error(ErrorKind::NonIntegralCartan, "edge count between orbits " + std::to_string(i) + " and " +
                                                      std::to_string(j) + " not divisible by orbit size");
      }
      c.cartan(i, j) = -edges(i, j) / c.orbit_sizes[i];
    }
  }
  std::vector<bool> seen(q.arrows.size(), false);
  for (size_t h = 0; h < q.arrows.size(); ++h) {
    if (seen[h]) continue;
    ArrowOrbit ao;
    for (size_t g = h; !seen[g]; g = static_cast<size_t>(q.arrow_perm[g])) {
      seen[g] = true;
      ao.arrows.push_back(static_cast<int>(g));
    }
    std::sort(ao.arrows.begin(), ao.arrows.end());
    ao.size = static_cast<int>(ao.arrows.size());
    ao.src = c.orbit_of[q.arrows[h].src];
    ao.tgt = c.orbit_of[q.arrows[h].tgt];
    c.arrow_orbits.push_back(ao);
  }
  c.automorphism_order = std::lcm(perm_order(q.vertex_perm), perm_order(q.arrow_perm));
  c.type_label = classify_cartan(c.cartan, c.orbit_sizes);
  return c;
}

std::string classify_cartan(const Eigen::MatrixXi& cartan, const std::vector<int>& sym) {
  const int r = static_cast<int>(cartan.rows());
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj(r);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      if (cartan(i, j) != 0 || cartan(j, i) != 0) {
        edges.emplace_back(i, j);
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  std::string label;
  for (const auto& comp : components(r, edges)) {
    int worst = 0;
    for (int i : comp) {
      for (int j : comp) {
        if (i != j) worst = std::min(worst, cartan(i, j));
      }
    }
    std::string part;
    const int n = static_cast<int>(comp.size());
    if (worst == -3) {
      part = "G2";
    } else if (worst == -2) {
      if (n == 2) {
        part = "B2";
      } else {
        int big = 0;
        for (int i : comp) big = std::max(big, sym[i]);
        int longs = 0;
        for (int i : comp) longs += sym[i] == big ? 1 : 0;
        part = (longs == 1 ? "C" : "B") + std::to_string(n);
      }
    } else {
      part = simply_laced_label(comp, adj);
      if (part.empty()) part = "?" + std::to_string(n);
    }
    label += (label.empty() ? "" : "x") + part;
  }
  return label;
}

std::vector<int> unfold(const FoldedCartan& c, const DimVector& nu) {
  if (static_cast<int>(nu.size()) != c.rank()) throw Error(ErrorKind::DimensionMismatch, "unfold: wrong rank");
  std::vector<int> out(c.orbit_of.size());
  for (size_t v = 0; v < out.size(); ++v) out[v] = nu[c.orbit_of[v]];
  return out;
}

int twist_exponent(const QuiverWithAutomorphism& q, const FoldedCartan& c, const DimVector& a,
                   const DimVector& b) {
  if (a.size() != b.size() || static_cast<int>(a.size()) != c.rank()) {
    throw Error(ErrorKind::DimensionMismatch, "twist_exponent: vectors do not match the quiver");
  }
  std::vector<int> ua = unfold(c, a);
  std::vector<int> ub = unfold(c, b);
  int s = 0;
  for (size_t i = 0; i < ua.size(); ++i) s += ua[i] * ub[i];
  for (const auto& h : q.arrows) s += ua[h.src] * ub[h.tgt];
  return s;
}

namespace {

QuiverWithAutomorphism make(std::string label, std::vector<std::string> names,
                            std::vector<std::pair<int, int>> arrows, std::vector<int> vperm,
                            std::vector<int> aperm) {
  QuiverWithAutomorphism q;
  q.label = std::move(label);
  q.vertex_names = std::move(names);
  for (size_t h = 0; h < arrows.size(); ++h) {
    q.arrows.push_back({"h" + std::to_string(h + 1), arrows[h].first, arrows[h].second});
  }
  q.vertex_perm = std::move(vperm);
  q.arrow_perm = std::move(aperm);
  return q;
}

std::vector<int> identity(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

}  // namespace

std::vector<std::string> catalog_labels() { return {"A1", "A2", "A3", "A4", "A5", "D4", "B2", "C3", "G2"}; }

QuiverWithAutomorphism catalog(const std::string& label) {
  if (label.size() == 2 && label[0] == 'A' && label[1] >= '1' && label[1] <= '5') {
    int n = label[1] - '0';
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> arrows;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i + 1));
    for (int i = 0; i + 1 < n; ++i) arrows.emplace_back(i, i + 1);
    return make(label, names, arrows, identity(n), identity(n - 1));
  }
  // D4: branch vertex 0, all arrows into it.
  const std::vector<std::string> d4_names{"0", "1", "2", "3"};
  const std::vector<std::pair<int, int>> d4_arrows{{1, 0}, {2, 0}, {3, 0}};
  if (label == "D4") return make(label, d4_names, d4_arrows, identity(4), identity(3));
  if (label == "C3") return make(label, d4_names, d4_arrows, {0, 2, 1, 3}, {1, 0, 2});
  if (label == "G2") return make(label, d4_names, d4_arrows, {0, 2, 3, 1}, {1, 2, 0});
  if (label == "B2") {
    // A3 with orientation 1 -> 2 <- 3 and a = (1 3).
    return make(label, {"1", "2", "3"}, {{0, 1}, {2, 1}}, {2, 1, 0}, {1, 0});
  }
  throw Error(ErrorKind::UnknownType, "no catalog entry for '" + label + "'");
}

}  // namespace hallbasis
