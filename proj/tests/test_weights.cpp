#include <doctest.h>

#include "slmn/weights.hpp"

using namespace slmn;

namespace {

Weight make_weight(Dims mn, std::initializer_list<long> coords) {
  RatVec c(mn.N());
  int i = 0;
  for (long v : coords) c[i++] = v;
  return Weight(mn, std::move(c));
}

}  // namespace

TEST_CASE("dims validation") {
  CHECK_THROWS_AS(Dims(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(Dims(0, 1), std::invalid_argument);
  CHECK(Dims(4, 1).t() == 3);
  CHECK(Dims(4, 1).parity(3) == 0);
  CHECK(Dims(4, 1).parity(4) == 1);
}

TEST_CASE("rho fixtures") {
  CHECK(rho(Dims(4, 1)) == make_weight(Dims(4, 1), {1, 0, -1, -2, 2}));
  CHECK(rho(Dims(5, 2)) == make_weight(Dims(5, 2), {1, 0, -1, -2, -3, 3, 2}));
  // Half-integral entries are fine; the coefficient sum is still zero.
  Weight r51 = rho(Dims(5, 1));
  CHECK(r51[0] == rat(3, 2));
  Rat sum(0);
  for (int i = 0; i < 6; ++i) sum += r51[i];
  CHECK(sum == 0);
}

TEST_CASE("zero-coefficient epsilon entry when m-n is odd") {
  // (m-n-2i+1)/2 vanishes at i = (m-n+1)/2.
  Dims mn(6, 1);
  Weight r = rho(mn);
  CHECK(r[(mn.t() + 1) / 2 - 1] == 0);
}

TEST_CASE("weight invariants") {
  Dims mn(4, 1);
  RatVec bad(mn.N());
  bad.setConstant(Rat(1));
  CHECK_THROWS_AS(Weight(mn, bad), std::invalid_argument);
  CHECK_THROWS_AS(form_eval(Weight(Dims(4, 1)), Weight(Dims(5, 2))), std::invalid_argument);
}

TEST_CASE("form fixtures at (4,1)") {
  Dims mn(4, 1);
  Weight odd_root = Weight::root(mn, 0, 4);  // eps_1 - delta_1
  CHECK(form_eval(odd_root, odd_root) == 0);
  Weight shifted = odd_root + rho(mn) * Rat(2);
  CHECK(form_eval(odd_root, shifted) == 6);
  CHECK(form_eval(rho(mn), Weight(mn)) == 0);
}

TEST_CASE("casimir eigenvalue fixtures") {
  Dims mn(4, 1);
  CHECK(casimir_eigenvalue(Weight::root(mn, 0, 4)) == 6);
  CHECK(casimir_eigenvalue(Weight(mn)) == 0);
  CHECK(casimir_eigenvalue(make_weight(mn, {2, 0, 0, -1, -1})) == 16);
  for (int k = 1; k <= 6; ++k) {
    CHECK(casimir_eigenvalue(lambda_k(k, mn)) == 2 * k * (k + mn.t() - 1));
    CHECK(casimir_eigenvalue(lambda_k(k, Dims(6, 2))) == 2 * k * (k + 3));
    CHECK(casimir_eigenvalue(lambda_k(k, Dims(7, 3))) == 2 * k * (k + 3));
  }
}

TEST_CASE("lambda_k branches") {
  CHECK(lambda_k(1, Dims(4, 1)) == Weight::root(Dims(4, 1), 0, 4));
  CHECK(lambda_k(2, Dims(4, 1)) == make_weight(Dims(4, 1), {2, 0, 0, -1, -1}));
  CHECK(lambda_k(2, Dims(5, 2)) == make_weight(Dims(5, 2), {2, 0, 0, 0, 0, -1, -1}));
  CHECK(lambda_k(3, Dims(4, 1)) == make_weight(Dims(4, 1), {3, 0, 0, -2, -1}));
  // Both branch formulas agree at k = n.
  Dims mn(6, 2);
  Weight both = lambda_k(2, mn);
  RatVec c = RatVec::Zero(mn.N());
  c[0] = 2;
  c[mn.m - 1] = 0;
  c[mn.m] = -1;
  c[mn.m + 1] = -1;
  CHECK(both == Weight(mn, std::move(c)));
  CHECK_THROWS_AS(lambda_k(0, mn), std::invalid_argument);
}

TEST_CASE("root system structure") {
  Dims mn(5, 2);
  RootSystem rs = root_system(mn);
  CHECK(rs.positive_even.size() == 5 * 4 / 2 + 1);
  CHECK(rs.positive_odd.size() == 10);
  CHECK(rs.simple.size() == 6);
  CHECK(rs.simple[4] == Weight::root(mn, 4, 5));  // eps_m - delta_1 across the boundary
  // rho = rho_0 - half the odd sum.
  Weight acc(mn);
  for (const auto& a : rs.positive_even) acc = acc + a * rat(1, 2);
  for (const auto& a : rs.positive_odd) acc = acc - a * rat(1, 2);
  CHECK(acc == rho(mn));
}

TEST_CASE("dominance") {
  Dims mn(4, 1);
  CHECK(dominance_status(Weight(mn)) == Dominance::DominantRegular);
  CHECK(is_dominant_regular(make_weight(mn, {2, 0, 0, -1, -1})));
  CHECK(dominance_status(make_weight(mn, {-2, 2, 0, 0, 0})) == Dominance::NotDominant);
  // Half a root is not integral, and that is flagged distinctly.
  RatVec c = RatVec::Zero(mn.N());
  c[0] = rat(1, 2);
  c[1] = rat(-1, 2);
  CHECK(dominance_status(Weight(mn, std::move(c))) == Dominance::NotIntegral);
}

TEST_CASE("coroot of an isotropic root is rejected") {
  Dims mn(4, 1);
  CHECK_THROWS_AS(coroot(Weight::root(mn, 0, 4)), std::domain_error);
  CHECK(coroot(Weight::root(mn, 0, 1)) == Weight::root(mn, 0, 1));
  // delta-type coroots flip sign: (delta_i - delta_j, .)^vee = -(delta_i - delta_j).
  Dims mn2(5, 2);
  CHECK(coroot(Weight::root(mn2, 5, 6)) == -Weight::root(mn2, 5, 6));
}
