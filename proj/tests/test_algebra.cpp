#include <doctest.h>

#include <random>

#include "slmn/algebra.hpp"
#include "slmn/hwsolver.hpp"
#include "slmn/linalg.hpp"

using namespace slmn;

TEST_CASE("sl basis layout") {
  Dims mn(4, 1);
  SlBasis b = sl_basis(mn);
  CHECK(b.dim() == 24);
  CHECK(sl_basis(Dims(5, 2)).dim() == 48);
  // First Cartan element is E11 - E22.
  const auto& h1 = b[b.index_of_cartan(0)];
  CHECK(h1.mat == SuperMatrix(unit_matrix(mn, 0, 0) - unit_matrix(mn, 1, 1)));
  CHECK(supertrace(mn, h1.mat) == 0);
  // The boundary Cartan picks up the +1 sign.
  const auto& hm = b[b.index_of_cartan(3)];
  CHECK(hm.mat == SuperMatrix(unit_matrix(mn, 3, 3) + unit_matrix(mn, 4, 4)));
  CHECK(supertrace(mn, hm.mat) == 0);
  for (int a = 0; a < b.dim(); ++a) CHECK(supertrace(mn, b[a].mat) == 0);
  // Unit index round trip.
  CHECK(b[b.index_of_unit(2, 4)].i == 2);
  CHECK(b[b.index_of_unit(2, 4)].j == 4);
}

TEST_CASE("coords round trip") {
  Dims mn(4, 1);
  SlBasis b = sl_basis(mn);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, b.dim() - 1), num(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    SuperMatrix x = zero_matrix(mn);
    RatVec expect(b.dim());
    expect.setConstant(Rat(0));
    for (int t = 0; t < 6; ++t) {
      int a = pick(rng);
      Rat c = num(rng);
      expect[a] += c;
      x += c * b[a].mat;
    }
    RatVec got = b.coords(x);
    CHECK(got == expect);
  }
  CHECK_THROWS_AS(b.coords(identity_matrix(mn)), std::invalid_argument);
}

TEST_CASE("bracket fixtures") {
  Dims mn(4, 1);
  CHECK(bracket(mn, unit_matrix(mn, 0, 1), unit_matrix(mn, 1, 0)) ==
        SuperMatrix(unit_matrix(mn, 0, 0) - unit_matrix(mn, 1, 1)));
  // Odd-odd bracket is the anticommutator: [E15, E51] = E11 + E55.
  CHECK(bracket(mn, unit_matrix(mn, 0, 4), unit_matrix(mn, 4, 0)) ==
        SuperMatrix(unit_matrix(mn, 0, 0) + unit_matrix(mn, 4, 4)));
  // Square of an odd raising root vector.
  CHECK(bracket(mn, unit_matrix(mn, 0, 4), unit_matrix(mn, 0, 4)).isZero(0));
}

TEST_CASE("supertrace fixtures") {
  Dims mn(4, 1);
  CHECK(supertrace(mn, identity_matrix(mn)) == 3);
  CHECK(supertrace(mn, SuperMatrix(unit_matrix(mn, 0, 0) + unit_matrix(mn, 4, 4))) == 0);
  SlBasis b = sl_basis(mn);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, b.dim() - 1), num(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    SuperMatrix x = zero_matrix(mn), y = zero_matrix(mn);
    for (int t = 0; t < 5; ++t) {
      x += Rat(num(rng)) * b[pick(rng)].mat;
      y += Rat(num(rng)) * b[pick(rng)].mat;
    }
    CHECK(supertrace(mn, bracket(mn, x, y)) == 0);
  }
}

TEST_CASE("killing fixtures") {
  Dims mn(4, 1);
  CHECK(killing(mn, unit_matrix(mn, 0, 1), unit_matrix(mn, 1, 0)) == 6);
  CHECK(killing(mn, unit_matrix(mn, 0, 1), unit_matrix(mn, 0, 1)) == 0);
  SlBasis b = sl_basis(mn);
  // killing == supertrace of the composite adjoint action.
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> pick(0, b.dim() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    int x = pick(rng), y = pick(rng);
    RatMat prod = ad_matrix(b, b[x].mat) * ad_matrix(b, b[y].mat);
    Rat str_ad(0);
    for (int q = 0; q < b.dim(); ++q) {
      Rat term = prod(q, q);
      if (b[q].parity) term = -term;
      str_ad += term;
    }
    CHECK(str_ad == killing(mn, b[x].mat, b[y].mat));
  }
  // Non-degeneracy.
  RatMat gram(b.dim(), b.dim());
  for (int a = 0; a < b.dim(); ++a)
    for (int c = 0; c < b.dim(); ++c) gram(a, c) = killing(mn, b[a].mat, b[c].mat);
  CHECK(rank_exact(gram) == b.dim());
}

TEST_CASE("grade3") {
  Dims mn(4, 1);
  auto [lo, ze, hi] = grade3(mn, unit_matrix(mn, 1, 0));
  CHECK(lo == unit_matrix(mn, 1, 0));
  CHECK(ze.isZero(0));
  CHECK(hi.isZero(0));
  auto g = grade3(mn, SuperMatrix(unit_matrix(mn, 0, 0) + unit_matrix(mn, 4, 4)));
  CHECK(g[0].isZero(0));
  CHECK(g[1] == SuperMatrix(unit_matrix(mn, 0, 0) + unit_matrix(mn, 4, 4)));
  CHECK(g[2].isZero(0));
  // ad(E11) eigenvalue check over the basis, and dim g_-.
  SlBasis b = sl_basis(mn);
  int dim_minus = 0;
  for (int a = 0; a < b.dim(); ++a) {
    auto parts = grade3(mn, b[a].mat);
    SuperMatrix e11 = unit_matrix(mn, 0, 0);
    CHECK(bracket(mn, e11, parts[0]) == SuperMatrix(-parts[0]));
    CHECK(bracket(mn, e11, parts[1]).isZero(0));
    CHECK(bracket(mn, e11, parts[2]) == parts[2]);
    if (!parts[0].isZero(0) && parts[1].isZero(0) && parts[2].isZero(0)) ++dim_minus;
  }
  CHECK(dim_minus == 4);
}

TEST_CASE("casimir tensor") {
  Dims mn(4, 1);
  SlBasis b = sl_basis(mn);
  CasimirTensor cas = casimir_tensor(mn);
  // Ad-invariance as an element of g (x) g.
  for (int a = 0; a < b.dim(); ++a)
    CHECK(adjoint_act(mn, b[a].mat, cas.tensor).is_zero());
  // Adjoint highest weight vector: eigenvalue 6 at (4,1).
  SuperTensor top = matrix_to_tensor(mn, unit_matrix(mn, 0, 4));
  SuperTensor img = casimir_apply(cas, b, top);
  SuperTensor expect = top;
  expect.scale(Rat(6));
  CHECK(img == expect);
  // Natural module: the matrix action on e_1 equals the eigenvalue of the
  // zero-sum representative of eps_1.
  SuperMatrix cv = zero_matrix(mn);
  for (int a = 0; a < b.dim(); ++a)
    for (int c = 0; c < b.dim(); ++c) {
      if (cas.pair_coeffs(a, c) == 0) continue;
      cv += cas.pair_coeffs(a, c) * SuperMatrix(b[a].mat * b[c].mat);
    }
  for (int i = 1; i < mn.N(); ++i) CHECK(cv(i, 0) == 0);
  RatVec shifted(mn.N());
  for (int i = 0; i < mn.N(); ++i) shifted[i] = Rat(mn.sign(i)) * rat(-1, 3);
  shifted[0] += 1;
  CHECK(cv(0, 0) == casimir_eigenvalue(Weight(mn, shifted)));
  CHECK(cv(0, 0) == rat(8, 3));
}
