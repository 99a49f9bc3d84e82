#include <doctest.h>

#include <random>

#include "slmn/algebra.hpp"
#include "slmn/hwsolver.hpp"
#include "slmn/tensor.hpp"
#include "slmn/tensorio.hpp"
#include "slmn/tensorops.hpp"

using namespace slmn;

namespace {

SuperTensor unit_tensor(Dims mn, int i, int j) {
  return matrix_to_tensor(mn, unit_matrix(mn, i, j));
}

SuperTensor random_tensor(Dims mn, const Signature& sig, std::mt19937_64& rng, int terms) {
  SuperTensor t(mn, sig);
  std::uniform_int_distribution<int> idx(0, mn.N() - 1), num(-5, 5), den(1, 2);
  for (int i = 0; i < terms; ++i) {
    TKey k = 0;
    for (int s = 0; s < static_cast<int>(sig.size()); ++s) k = tkey_set(k, s, idx(rng));
    t.add(k, rat(num(rng), den(rng)));
  }
  return t;
}

/// Independent closed form for the Koszul sign of a permutation: the product
/// over inverted pairs of (-1)^(p_i p_j). Oracle for the bubble primitive.
int inversion_sign(const std::vector<int>& to_new, const std::vector<int>& par) {
  int sign = 1;
  for (size_t i = 0; i < to_new.size(); ++i)
    for (size_t j = i + 1; j < to_new.size(); ++j)
      if (to_new[i] > to_new[j] && par[i] && par[j]) sign = -sign;
  return sign;
}

}  // namespace

TEST_CASE("permute fixtures") {
  Dims mn(4, 1);
  // Even factors swap with sign +1.
  SuperTensor even = outer(unit_tensor(mn, 0, 1), unit_tensor(mn, 1, 0));
  SuperTensor even_sw = permute_signed(even, SlotPermutation::swap_pairs(4, 0, 1));
  CHECK(even_sw == outer(unit_tensor(mn, 1, 0), unit_tensor(mn, 0, 1)));
  // Two odd factors pick up -1.
  SuperTensor odd = outer(unit_tensor(mn, 0, 4), unit_tensor(mn, 4, 0));
  SuperTensor odd_sw = permute_signed(odd, SlotPermutation::swap_pairs(4, 0, 1));
  CHECK(odd_sw == -outer(unit_tensor(mn, 4, 0), unit_tensor(mn, 0, 4)));
  // Double swap is the identity.
  CHECK(permute_signed(odd_sw, SlotPermutation::swap_pairs(4, 0, 1)) == odd);
}

TEST_CASE("permute functoriality and the inversion-sign oracle") {
  Dims mn(3, 2);
  std::mt19937_64 rng(23);
  Signature sig = pair_signature(2);
  for (int trial = 0; trial < 30; ++trial) {
    SuperTensor t = random_tensor(mn, sig, rng, 5);
    std::vector<int> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> perm2{0, 1, 2, 3};
    std::shuffle(perm2.begin(), perm2.end(), rng);
    SlotPermutation p{perm}, q{perm2};
    CHECK(permute_signed(permute_signed(t, p), q) == permute_signed(t, q.after(p)));
  }
  // The bubble primitive against the closed form, per component.
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> par(4);
    for (auto& p : par) p = static_cast<int>(rng() % 2);
    std::vector<int> arrangement{0, 1, 2, 3};
    int got = koszul_sort_sign(arrangement, perm, par);
    CHECK(got == inversion_sign(perm, par));
  }
}

TEST_CASE("contract fixtures") {
  Dims mn(4, 1);
  // Matrix product via str_{2,3}.
  SuperTensor prod = contract_str(outer(unit_tensor(mn, 0, 1), unit_tensor(mn, 1, 0)), 1, 2);
  CHECK(prod == unit_tensor(mn, 0, 0));
  // Supertrace of a single sl element vanishes.
  SlBasis b = sl_basis(mn);
  for (int a = 0; a < b.dim(); ++a)
    CHECK(contract_str(matrix_to_tensor(mn, b[a].mat), 0, 1).is_zero());
  // kappa on a dual pair equals the Killing value.
  SuperTensor pair = outer(unit_tensor(mn, 0, 1), unit_tensor(mn, 1, 0));
  CHECK(kappa(pair) == 6);
  CHECK(kappa(outer(unit_tensor(mn, 0, 1), unit_tensor(mn, 0, 1))) == 0);
  CHECK_THROWS_AS(contract_str(pair, 0, 2), std::invalid_argument);
}

TEST_CASE("str_14 matches the displayed sign formula") {
  Dims mn(2, 1);
  const int N = mn.N();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          SuperTensor t(mn, pair_signature(2));
          TKey key = 0;
          key = tkey_set(key, 0, i);
          key = tkey_set(key, 1, j);
          key = tkey_set(key, 2, k);
          key = tkey_set(key, 3, l);
          t.add(key, 1);
          SuperTensor got = contract_str(t, 0, 3);
          // Expected: sum_i (-1)^{|i| + |i|(|k|+|j|)} A^i_j^k_i at (j, k).
          SuperTensor expect(mn, {Slot::Vd, Slot::V});
          if (i == l) {
            int e = mn.parity(i) * (1 + mn.parity(k) + mn.parity(j));
            TKey out = tkey_set(tkey_set(TKey(0), 0, j), 1, k);
            expect.add(out, (e & 1) ? Rat(-1) : Rat(1));
          }
          CHECK(got == expect);
        }
}

TEST_CASE("contraction is equivariant") {
  Dims mn(3, 2);  // |m-n| = 1: the tensor layer itself has no gap constraint
  SlBasis b = sl_basis(mn);
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> pick(0, b.dim() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    SuperTensor t = random_tensor(mn, pair_signature(2), rng, 6);
    const SuperMatrix& z = b[pick(rng)].mat;
    CHECK(contract_str(adjoint_act(mn, z, t), 1, 2) == adjoint_act(mn, z, contract_str(t, 1, 2)));
  }
}

TEST_CASE("adjoint action basics") {
  Dims mn(4, 1);
  SlBasis b = sl_basis(mn);
  // Diagonal H acts on a weight vector by the weight value. The tensor below
  // has weight eps1 + eps2 - eps3 - delta1, so H2 = E22 - E33 sees 2.
  SuperTensor t = outer(unit_tensor(mn, 0, 4), unit_tensor(mn, 1, 2));
  const auto& h = b[b.index_of_cartan(1)];
  SuperTensor expect = t;
  expect.scale(Rat(2));
  CHECK(adjoint_act(mn, h.mat, t) == expect);
  // Representation property on a random sample, including odd elements.
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pick(0, b.dim() - 1);
  for (int trial = 0; trial < 15; ++trial) {
    const auto& z1 = b[pick(rng)];
    const auto& z2 = b[pick(rng)];
    SuperTensor u = random_tensor(mn, pair_signature(2), rng, 5);
    SuperTensor lhs = adjoint_act(mn, bracket(mn, z1.mat, z2.mat), u);
    SuperTensor rhs = adjoint_act(mn, z1.mat, adjoint_act(mn, z2.mat, u));
    SuperTensor swapped = adjoint_act(mn, z2.mat, adjoint_act(mn, z1.mat, u));
    if (z1.parity && z2.parity)
      rhs += swapped;
    else
      rhs -= swapped;
    CHECK(lhs == rhs);
  }
  // Raising vectors kill the highest vector of the square.
  SuperTensor top2 = outer(unit_tensor(mn, 0, 4), unit_tensor(mn, 0, 4));
  for (int z : b.simple_raising_indices())
    CHECK(adjoint_act(mn, b[z].mat, top2).is_zero());
}

TEST_CASE("tensor json round trip") {
  Dims mn(4, 1);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    SuperTensor t = random_tensor(mn, pair_signature(3), rng, 12);
    CHECK(tensor_from_json(tensor_to_json(t)) == t);
  }
  SuperTensor empty(mn, {});
  CHECK(tensor_from_json(tensor_to_json(empty)) == empty);
  CHECK_THROWS(tensor_from_json("{\"m\":4"));
}

TEST_CASE("outer and scalar extraction") {
  Dims mn(4, 1);
  SuperTensor a = unit_tensor(mn, 0, 1);
  SuperTensor s = contract_str(outer(a, unit_tensor(mn, 1, 0)), 1, 2);
  SuperTensor full = contract_str(s, 0, 1);
  CHECK(scalar_of(full) == 1);
  CHECK_THROWS_AS(scalar_of(a), std::invalid_argument);
}
