#include <doctest.h>

#include <random>

#include "slmn/algebra.hpp"
#include "slmn/hwsolver.hpp"
#include "slmn/tensorops.hpp"

using namespace slmn;

namespace {

SuperTensor unit_tensor(Dims mn, int i, int j) {
  return matrix_to_tensor(mn, unit_matrix(mn, i, j));
}

SuperTensor random_symmetric(Dims mn, const SlBasis& b, std::mt19937_64& rng, int terms) {
  SuperTensor t(mn, pair_signature(2));
  std::uniform_int_distribution<int> pick(0, b.dim() - 1), num(-5, 5);
  for (int i = 0; i < terms; ++i) {
    SuperTensor term =
        outer(matrix_to_tensor(mn, b[pick(rng)].mat), matrix_to_tensor(mn, b[pick(rng)].mat));
    term.scale(Rat(num(rng)));
    t += term;
  }
  return pair_sym(t);
}

}  // namespace

TEST_CASE("phi constants at (4,1)") {
  PhiConstants k = phi_constants(Dims(4, 1));
  CHECK(k.a == rat(3, 5));
  CHECK(k.c1 == rat(-11, 24));
  CHECK(k.c2 == rat(3, 8));
  CHECK_THROWS_AS(phi_constants(Dims(3, 1)), std::domain_error);
}

TEST_CASE("phi section properties") {
  for (Dims mn : {Dims(4, 1), Dims(5, 2)}) {
    SlBasis b = sl_basis(mn);
    for (int a = 0; a < b.dim(); ++a) {
      SuperTensor bt = matrix_to_tensor(mn, b[a].mat);
      SuperTensor pb = phi(bt);
      CHECK(contract_str(pb, 1, 2) == bt);
      CHECK(contract_str(pb, 0, 1).is_zero());
      CHECK(permute_signed(pb, SlotPermutation::swap_pairs(4, 0, 1)) == pb);
    }
    // Also on a non-traceless input (phi is defined on all of V (x) V*).
    SuperTensor delta_t = matrix_to_tensor(mn, identity_matrix(mn));
    CHECK(contract_str(phi(delta_t), 1, 2) == delta_t);
  }
}

TEST_CASE("phi delta closed form") {
  Dims mn(4, 1);
  const long t = mn.t();
  SuperTensor pd = phi_delta(mn);
  SuperTensor expect(mn, pair_signature(2));
  for (int i = 0; i < mn.N(); ++i)
    for (int k = 0; k < mn.N(); ++k) {
      TKey cross = tkey_set(tkey_set(tkey_set(tkey_set(TKey(0), 0, i), 1, k), 2, k), 3, i);
      expect.add(cross, Rat(mn.parity(k) ? -t : t) / Rat(t * t - 1));
      TKey straight = tkey_set(tkey_set(tkey_set(tkey_set(TKey(0), 0, i), 1, i), 2, k), 3, k);
      expect.add(straight, Rat(-1) / Rat(t * t - 1));
    }
  CHECK(pd == expect);
  CHECK(kappa(pd) == 18);
}

TEST_CASE("psi") {
  Dims mn(4, 1);
  SlBasis b = sl_basis(mn);
  for (int a = 0; a < b.dim(); ++a) {
    SuperTensor bt = matrix_to_tensor(mn, b[a].mat);
    SuperTensor qb = psi(bt);
    CHECK(contract_str(qb, 1, 2) == bt);
    CHECK(permute_signed(qb, SlotPermutation::swap_pairs(4, 0, 1)) == -qb);
    CHECK(contract_str(qb, 0, 1).is_zero());
    CHECK(contract_str(qb, 2, 3).is_zero());
  }
  // psi of an odd element threads odd parities.
  SuperTensor odd = psi(unit_tensor(mn, 0, 4));
  CHECK(!odd.is_zero());
  CHECK_THROWS_AS(psi(matrix_to_tensor(mn, identity_matrix(mn))), std::invalid_argument);
}

TEST_CASE("chi is an idempotent fixing the phi image") {
  Dims mn(4, 1);
  SlBasis b = sl_basis(mn);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    SuperTensor a = random_symmetric(mn, b, rng, 6);
    CHECK(chi(chi(a)) == chi(a));
  }
  SuperTensor pb = phi(unit_tensor(mn, 0, 1));
  CHECK(chi(pb) == pb);
  // A symmetric tensor with zero str_{2,3} is in the kernel.
  SuperTensor top = outer(unit_tensor(mn, 0, 4), unit_tensor(mn, 0, 4));
  CHECK(chi(top).is_zero());
}

TEST_CASE("decompose_sym harness at (4,1) and (5,2)") {
  for (Dims mn : {Dims(4, 1), Dims(5, 2)}) {
    SlBasis b = sl_basis(mn);
    std::mt19937_64 rng(1000u * mn.m + mn.n);
    for (int trial = 0; trial < 50; ++trial) {
      SuperTensor a = random_symmetric(mn, b, rng, 6);
      auto d = decompose_sym(a);
      CHECK((d.B + d.C + d.D + d.E) == a);
      CHECK(contract_str(d.B, 1, 2).is_zero());
      CHECK(contract_str(d.C, 1, 2).is_zero());
      CHECK(kappa(d.D) == 0);
      CHECK(chi(d.B).is_zero());
      CHECK(chi(d.C).is_zero());
      CHECK(kappa(d.B) == 0);
      CHECK(kappa(d.C) == 0);
      CHECK(upper_sym(d.B) == d.B);
      CHECK(upper_sym(d.C).is_zero());
    }
  }
}

TEST_CASE("decompose_sym trivial cases") {
  Dims mn(4, 1);
  // Pure trace part.
  SuperTensor pd = phi_delta(mn);
  auto d = decompose_sym(pd);
  CHECK(d.B.is_zero());
  CHECK(d.C.is_zero());
  CHECK(d.D.is_zero());
  CHECK(d.E == pd);
  // Pure Cartan part: the highest root square.
  SuperTensor top = outer(unit_tensor(mn, 0, 4), unit_tensor(mn, 0, 4));
  auto d2 = decompose_sym(top);
  CHECK(d2.B == top);
  CHECK(d2.C.is_zero());
  CHECK(d2.D.is_zero());
  CHECK(d2.E.is_zero());
  // Validation rejects non-symmetric input.
  SuperTensor asym = outer(unit_tensor(mn, 0, 1), unit_tensor(mn, 1, 2));
  CHECK_THROWS_AS(decompose_sym(asym), std::invalid_argument);
}

TEST_CASE("upper symmetrisation sign pattern") {
  // q is the slot-1/3 exchange whose composed sign is
  // (-1)^{|i||j|+|i||k|+|j||k|}; check against a literal transcription.
  Dims mn(3, 2);
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> idx(0, mn.N() - 1), num(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    SuperTensor t(mn, pair_signature(2));
    for (int c = 0; c < 5; ++c) {
      TKey k = 0;
      for (int s = 0; s < 4; ++s) k = tkey_set(k, s, idx(rng));
      t.add(k, Rat(num(rng)));
    }
    SuperTensor expect(mn, pair_signature(2));
    for (const auto& [k, v] : t.components()) {
      int i = tkey_get(k, 0), j = tkey_get(k, 1), kk = tkey_get(k, 2), l = tkey_get(k, 3);
      expect.add(k, v * rat(1, 2));
      int e = mn.parity(i) * mn.parity(j) + mn.parity(i) * mn.parity(kk) +
              mn.parity(j) * mn.parity(kk);
      TKey sw = tkey_set(tkey_set(tkey_set(tkey_set(TKey(0), 0, kk), 1, j), 2, i), 3, l);
      expect.add(sw, (e & 1) ? -v * rat(1, 2) : v * rat(1, 2));
    }
    CHECK(upper_sym(t) == expect);
  }
}

TEST_CASE("cartan product and the off-Cartan projector") {
  Dims mn(4, 1);
  SuperMatrix top = unit_matrix(mn, 0, 4);
  SuperTensor xx = outer(matrix_to_tensor(mn, top), matrix_to_tensor(mn, top));
  CHECK(cartan_product(mn, top, top) == xx);
  CHECK(project_offcartan(xx).is_zero());
  SlBasis b = sl_basis(mn);
  for (int a = 0; a < b.dim(); a += 5)
    for (int c = 0; c < b.dim(); c += 7) {
      SuperTensor cp = cartan_product(mn, b[a].mat, b[c].mat);
      CHECK(kappa(cp) == 0);
      CHECK(contract_str(cp, 1, 2).is_zero());
    }
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> pick(0, b.dim() - 1), num(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    SuperTensor t(mn, pair_signature(2));
    for (int i = 0; i < 5; ++i) {
      SuperTensor term =
          outer(matrix_to_tensor(mn, b[pick(rng)].mat), matrix_to_tensor(mn, b[pick(rng)].mat));
      term.scale(Rat(num(rng)));
      t += term;
    }
    CHECK(project_offcartan(project_offcartan(t)) == project_offcartan(t));
    SuperTensor anti = t - permute_signed(t, SlotPermutation::swap_pairs(4, 0, 1));
    CHECK(project_offcartan(anti) == anti);
  }
}

TEST_CASE("perturbed constants break the section conditions") {
  Dims mn(4, 1);
  PhiConstants k = phi_constants(mn);
  SuperTensor e01 = unit_tensor(mn, 0, 1);
  SuperTensor delta_t = matrix_to_tensor(mn, identity_matrix(mn));
  Rat eps = rat(1, 1000);
  auto broken = [&](const Rat& a, const Rat& c1, const Rat& c2) {
    for (const SuperTensor* bt : {&e01, &delta_t}) {
      SuperTensor pb = phi_with_constants(*bt, a, c1, c2);
      if (contract_str(pb, 1, 2) != *bt) return true;
      if (!contract_str(pb, 0, 1).is_zero()) return true;
    }
    return false;
  };
  CHECK(!broken(k.a, k.c1, k.c2));
  CHECK(broken(k.a + eps, k.c1, k.c2));
  CHECK(broken(k.a, k.c1 + eps, k.c2));
  CHECK(broken(k.a, k.c1, k.c2 + eps));
}

TEST_CASE("operators are module morphisms") {
  Dims mn(4, 1);
  SlBasis b = sl_basis(mn);
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> pick(0, b.dim() - 1);
  for (int trial = 0; trial < 8; ++trial) {
    const auto& z = b[pick(rng)];
    SuperTensor bt = matrix_to_tensor(mn, b[pick(rng)].mat);
    CHECK(phi(adjoint_act(mn, z.mat, bt)) == adjoint_act(mn, z.mat, phi(bt)));
    CHECK(psi(adjoint_act(mn, z.mat, bt)) == adjoint_act(mn, z.mat, psi(bt)));
    SuperTensor a = random_symmetric(mn, b, rng, 5);
    auto lhs = decompose_sym(adjoint_act(mn, z.mat, a), false);
    auto rhs = decompose_sym(a);
    CHECK(lhs.B == adjoint_act(mn, z.mat, rhs.B));
    CHECK(lhs.C == adjoint_act(mn, z.mat, rhs.C));
    CHECK(lhs.D == adjoint_act(mn, z.mat, rhs.D));
    CHECK(lhs.E == adjoint_act(mn, z.mat, rhs.E));
  }
}
