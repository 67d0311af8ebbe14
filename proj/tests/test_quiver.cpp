#include "hallbasis/error.hpp"
#include "hallbasis/quiver.hpp"

#include <doctest.h>

#include <numeric>

using namespace hallbasis;

namespace {

// Folded Cartan matrix straight from the definition: c_ij = -#edges between
// one fixed vertex of orbit i and all vertices of orbit j.
Eigen::MatrixXi cartan_oracle(const QuiverWithAutomorphism& q, const FoldedCartan& c) {
  const int r = c.rank();
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    const int v = c.orbits[i][0];
    for (int j = 0; j < r; ++j) {
      if (i == j) {
        m(i, j) = 2;
        continue;
      }
      for (const auto& a : q.arrows) {
        if ((a.src == v && c.orbit_of[a.tgt] == j) || (a.tgt == v && c.orbit_of[a.src] == j)) --m(i, j);
      }
    }
  }
  return m;
}

QuiverWithAutomorphism linear(int n) {
  QuiverWithAutomorphism q;
  q.label = "test";
  for (int i = 0; i < n; ++i) q.vertex_names.push_back(std::to_string(i + 1));
  for (int i = 0; i + 1 < n; ++i) q.arrows.push_back({"a" + std::to_string(i), i, i + 1});
  q.vertex_perm.resize(n);
  std::iota(q.vertex_perm.begin(), q.vertex_perm.end(), 0);
  q.arrow_perm.resize(q.arrows.size());
  std::iota(q.arrow_perm.begin(), q.arrow_perm.end(), 0);
  return q;
}

}  // namespace

TEST_CASE("catalog folds to the expected Cartan data") {
  struct Expect {
    std::string label;
    std::string type;
    std::vector<int> sym;
  };
  for (const Expect& e : std::vector<Expect>{{"A1", "A1", {1}},
                                             {"A2", "A2", {1, 1}},
                                             {"A3", "A3", {1, 1, 1}},
                                             {"A4", "A4", {1, 1, 1, 1}},
                                             {"A5", "A5", {1, 1, 1, 1, 1}},
                                             {"D4", "D4", {1, 1, 1, 1}},
                                             {"B2", "B2", {2, 1}},
                                             {"C3", "C3", {1, 2, 1}},
                                             {"G2", "G2", {1, 3}}}) {
    CAPTURE(e.label);
    const QuiverWithAutomorphism q = catalog(e.label);
    CHECK(validate_admissible(q).ok);
    const FoldedCartan c = fold(q);
    CHECK(c.type_label == e.type);
    CHECK(c.orbit_sizes == e.sym);
    CHECK(c.cartan == cartan_oracle(q, c));
    // D C is symmetric.
    for (int i = 0; i < c.rank(); ++i) {
      for (int j = 0; j < c.rank(); ++j) CHECK(c.orbit_sizes[i] * c.cartan(i, j) == c.orbit_sizes[j] * c.cartan(j, i));
    }
    // Orientation is stable under the automorphism.
    for (size_t h = 0; h < q.arrows.size(); ++h) {
      CHECK(q.arrows[q.arrow_perm[h]].src == q.vertex_perm[q.arrows[h].src]);
    }
  }
  const FoldedCartan b2 = fold(catalog("B2"));
  Eigen::MatrixXi expect(2, 2);
  expect << 2, -1, -2, 2;
  CHECK(b2.cartan == expect);
  const FoldedCartan g2 = fold(catalog("G2"));
  expect << 2, -3, -1, 2;
  CHECK(g2.cartan == expect);
  CHECK_THROWS_AS(catalog("E6"), Error);
}

TEST_CASE("unfold and twist exponent") {
  const QuiverWithAutomorphism b2 = catalog("B2");
  const FoldedCartan c = fold(b2);
  CHECK(unfold(c, {1, 1}) == std::vector<int>{1, 1, 1});
  CHECK(unfold(c, {2, 0}) == std::vector<int>{2, 0, 2});

  const QuiverWithAutomorphism a2 = catalog("A2");
  const FoldedCartan ca = fold(a2);
  CHECK(twist_exponent(a2, ca, {1, 0}, {0, 1}) == 1);
  CHECK(twist_exponent(a2, ca, {0, 1}, {1, 0}) == 0);
  CHECK(twist_exponent(a2, ca, {1, 0}, {1, 0}) == 1);
  CHECK_THROWS_AS(twist_exponent(a2, ca, {1}, {1, 0}), Error);

  // Oracle: sum over unfolded vertices and the arrows of Omega.
  for (const auto& label : catalog_labels()) {
    const QuiverWithAutomorphism q = catalog(label);
    const FoldedCartan f = fold(q);
    DimVector a(f.rank()), b(f.rank());
    for (int i = 0; i < f.rank(); ++i) {
      a[i] = i % 2 + 1;
      b[i] = (i + 1) % 3;
    }
    auto ua = unfold(f, a), ub = unfold(f, b);
    int expect_a = 0;
    for (size_t v = 0; v < ua.size(); ++v) expect_a += ua[v] * ub[v];
    for (const auto& h : q.arrows) expect_a += ua[h.src] * ub[h.tgt];
    CHECK(twist_exponent(q, f, a, b) == expect_a);
  }
}

TEST_CASE("validation rejects inadmissible data") {
  auto violated = [](const QuiverWithAutomorphism& q) { return !validate_admissible(q).ok; };
  CHECK(!violated(linear(3)));

  auto loop = linear(2);
  loop.arrows.push_back({"l", 0, 0});
  loop.arrow_perm.push_back(1);
  CHECK(violated(loop));

  auto multi = linear(2);
  multi.arrows.push_back({"b", 0, 1});
  multi.arrow_perm.push_back(1);
  CHECK(violated(multi));

  auto cycle = linear(3);
  cycle.arrows.push_back({"c", 2, 0});
  cycle.arrow_perm.push_back(2);
  CHECK(violated(cycle));

  // Flip of A2 swaps the endpoints of its only arrow.
  auto inside = linear(2);
  inside.vertex_perm = {1, 0};
  CHECK(violated(inside));

  // Swapping 1 and 3 in 1 -> 2 -> 3 does not preserve orientation.
  auto incompatible = linear(3);
  incompatible.vertex_perm = {2, 1, 0};
  incompatible.arrow_perm = {1, 0};
  CHECK(violated(incompatible));

  auto bad_perm = linear(3);
  bad_perm.vertex_perm = {0, 0, 1};
  CHECK(violated(bad_perm));

  // Affine D4: star with four leaves.
  QuiverWithAutomorphism affine = linear(1);
  for (int i = 1; i <= 4; ++i) {
    affine.vertex_names.push_back(std::to_string(i + 1));
    affine.vertex_perm.push_back(i);
    affine.arrows.push_back({"s" + std::to_string(i), i, 0});
    affine.arrow_perm.push_back(i - 1);
  }
  CHECK(violated(affine));

  auto period = catalog("G2");
  period.period = 2;
  CHECK(violated(period));
  period.period = 6;
  CHECK(!violated(period));
}

TEST_CASE("classify_cartan") {
  Eigen::MatrixXi a3(3, 3);
  a3 << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  CHECK(classify_cartan(a3, {1, 1, 1}) == "A3");
  Eigen::MatrixXi two(2, 2);
  two << 2, 0, 0, 2;
  CHECK(classify_cartan(two, {1, 1}) == "A1xA1");
}
