#include <doctest.h>

#include "slmn/hwsolver.hpp"

using namespace slmn;

namespace {

Weight make_weight(Dims mn, std::initializer_list<long> coords) {
  RatVec c(mn.N());
  int i = 0;
  for (long v : coords) c[i++] = v;
  return Weight(mn, std::move(c));
}

}  // namespace

TEST_CASE("lemma 3 kernel dimensions at (4,1)") {
  Dims mn(4, 1);
  Weight top = Weight::root(mn, 0, 4);
  CHECK(highest_weight_vectors(mn, 2, top).dim() == 2);
  CHECK(highest_weight_vectors(mn, 2, make_weight(mn, {2, 0, 0, -1, -1})).dim() == 1);
  CHECK(highest_weight_vectors(mn, 2, Weight(mn)).dim() == 1);
  // A weight outside the seven summands carries no highest weight vector.
  CHECK(highest_weight_vectors(mn, 2, make_weight(mn, {1, 0, 0, 1, -2})).dim() == 0);
}

TEST_CASE("hwv vectors are genuinely highest") {
  Dims mn(4, 1);
  SlBasis b = sl_basis(mn);
  SubspaceBasis hw = highest_weight_vectors(mn, 2, Weight::root(mn, 0, 4));
  REQUIRE(hw.dim() == 2);
  for (const auto& v : hw.vectors) {
    for (int z : b.positive_raising_indices())
      CHECK(adjoint_act(mn, b[z].mat, v).is_zero());
  }
}

TEST_CASE("simple-root kernel agrees with the full n+ kernel at (4,1)") {
  Dims mn(4, 1);
  for (const Weight& w : {Weight::root(mn, 0, 4), make_weight(mn, {2, 0, 0, -1, -1}), Weight(mn)}) {
    CHECK(highest_weight_vectors(mn, 2, w).dim() ==
          highest_weight_vectors_full_nplus(mn, 2, w).dim());
  }
}

TEST_CASE("theorem 1 expected weights") {
  Theorem1Weights w41 = theorem1_weights(Dims(4, 1));
  CHECK(w41.symmetric[0] == make_weight(Dims(4, 1), {2, 0, 0, -1, -1}));
  CHECK(w41.symmetric[1] == make_weight(Dims(4, 1), {1, 1, 0, 0, -2}));
  CHECK(w41.symmetric[2] == make_weight(Dims(4, 1), {1, 0, 0, 0, -1}));
  CHECK(w41.symmetric[3] == Weight(Dims(4, 1)));
  CHECK(w41.antisymmetric[0] == make_weight(Dims(4, 1), {2, 0, 0, 0, -2}));
  CHECK(w41.antisymmetric[1] == make_weight(Dims(4, 1), {1, 1, 0, -1, -1}));
  Theorem1Weights w62 = theorem1_weights(Dims(6, 2));
  CHECK(w62.symmetric[0] == make_weight(Dims(6, 2), {2, 0, 0, 0, 0, 0, -1, -1}));
  CHECK(w62.antisymmetric[0] == make_weight(Dims(6, 2), {2, 0, 0, 0, 0, 0, 0, -2}));
}

TEST_CASE("verify_tensor_square at (4,1)") {
  Dims mn(4, 1);
  WeightSpaceReport rep = verify_tensor_square(mn);
  auto sym = rep.nonzero_symmetric();
  auto anti = rep.nonzero_antisymmetric();
  REQUIRE(sym.size() == 4);
  REQUIRE(anti.size() == 3);
  Theorem1Weights expect = theorem1_weights(mn);
  auto contains = [](const std::vector<WeightSpaceEntry>& es, const Weight& w) {
    for (const auto& e : es)
      if (e.wt == w && e.hwv_dim == 1) return true;
    return false;
  };
  for (const auto& w : expect.symmetric) CHECK(contains(sym, w));
  for (const auto& w : expect.antisymmetric) CHECK(contains(anti, w));
  long total = 0;
  for (const auto& e : rep.symmetric) total += e.weight_dim;
  for (const auto& e : rep.antisymmetric) total += e.weight_dim;
  CHECK(total == 24 * 24);
  CHECK(!weight_space_report_json(rep).empty());
  CHECK_THROWS_AS(verify_tensor_square(Dims(3, 1)), std::domain_error);
}

TEST_CASE("lemma 3 candidate split at (6,2)") {
  Dims mn(6, 2);
  Lemma3Weights l3 = lemma3_weights(mn);
  CHECK(l3.allowed.size() == 6);
  // Of the displayed impossible values, four are dominant regular at (6,2)
  // (eps1 - eps_m style entries fail regularity there, and the
  // delta_{n-1}-entry degenerates at n = 2).
  std::vector<Weight> expect_excluded = {
      make_weight(mn, {2, 0, 0, 0, 0, -1, 0, -1}),  // 2e1 - e_m - d_n
      make_weight(mn, {1, 1, 0, 0, 0, -1, 0, -1}),  // e1 + e2 - e_m - d_n
      make_weight(mn, {0, 0, 0, 0, 0, 0, 1, -1}),   // d1 - d_n
      make_weight(mn, {1, 0, 0, 0, 0, 0, 1, -2})};  // e1 + d1 - 2d_n
  REQUIRE(l3.excluded.size() == expect_excluded.size());
  for (const auto& e : expect_excluded) {
    bool found = false;
    for (const auto& w : l3.excluded) found = found || w == e;
    CHECK(found);
  }
}

TEST_CASE("casimir_apply fixtures at (4,1)") {
  Dims mn(4, 1);
  SlBasis b = sl_basis(mn);
  CasimirTensor cas = casimir_tensor(mn);
  SubspaceBasis hw = highest_weight_vectors(mn, 2, lambda_k(2, mn));
  REQUIRE(hw.dim() == 1);
  SuperTensor v = hw.vectors[0];
  SuperTensor img = casimir_apply(cas, b, v);
  SuperTensor expect = v;
  expect.scale(Rat(16));
  CHECK(img == expect);
  CHECK(casimir_apply(cas, b, phi_delta(mn)).is_zero());
  SuperTensor wedge = psi(matrix_to_tensor(mn, unit_matrix(mn, 0, 4)));
  SuperTensor img2 = casimir_apply(cas, b, wedge);
  SuperTensor expect2 = wedge;
  expect2.scale(Rat(6));
  CHECK(img2 == expect2);
}

TEST_CASE("casimir_apply commutes with the adjoint action") {
  Dims mn(4, 1);
  SlBasis b = sl_basis(mn);
  CasimirTensor cas = casimir_tensor(mn);
  SuperTensor v = outer(matrix_to_tensor(mn, unit_matrix(mn, 0, 2)),
                        matrix_to_tensor(mn, unit_matrix(mn, 2, 4)));
  for (int a = 0; a < b.dim(); a += 5) {
    SuperTensor lhs = casimir_apply(cas, b, adjoint_act(mn, b[a].mat, v));
    SuperTensor rhs = adjoint_act(mn, b[a].mat, casimir_apply(cas, b, v));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("beta3 certification at (4,1)") {
  Dims mn(4, 1);
  Beta3Options opts;
  opts.jobs = 4;
  Beta3Report rep = beta3_check(mn, opts);
  CHECK(rep.dim_g3 == 13824);
  CHECK(rep.hwv_count == 1);
  REQUIRE(rep.hwv_weights.size() == 1);
  CHECK(rep.hwv_weights[0] == lambda_k(3, mn));
  CHECK(rep.dim_beta3 + rep.dim_I3 == rep.dim_g3);
  CHECK(rep.direct_sum_ok);
  CHECK(rep.pass);
  CHECK(!beta3_report_json(rep).empty());
}

TEST_CASE("beta3 resource guard") {
  Dims mn(4, 1);
  Beta3Options opts;
  opts.mem_cap_mb = 1;
  CHECK_THROWS_AS(beta3_check(mn, opts), ResourceCapExceeded);
}
