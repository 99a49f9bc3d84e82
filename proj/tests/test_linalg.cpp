#include <doctest.h>

#include <random>

#include "slmn/linalg.hpp"

using namespace slmn;

namespace {

RatMat random_matrix(std::mt19937_64& rng, int rows, int cols, int rank_cap) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
  RatMat l(rows, rank_cap), r(rank_cap, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rank_cap; ++j) l(i, j) = rat(num(rng), den(rng));
  for (int i = 0; i < rank_cap; ++i)
    for (int j = 0; j < cols; ++j) r(i, j) = rat(num(rng), den(rng));
  return l * r;
}

bool product_is_zero(const RatMat& a, const RatMat& k) {
  RatMat p = a * k;
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j)
      if (p(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("rank and kernel on fixtures") {
  RatMat a(2, 3);
  a << 1, 2, 3, 2, 4, 6;
  CHECK(rank_exact(a) == 1);
  RatMat k = kernel_exact(a);
  CHECK(k.cols() == 2);
  CHECK(product_is_zero(a, k));

  RatMat id(3, 3);
  id.setConstant(Rat(0));
  for (int i = 0; i < 3; ++i) id(i, i) = 1;
  CHECK(rank_exact(id) == 3);
  CHECK(kernel_exact(id).cols() == 0);
}

TEST_CASE("kernel on random low-rank matrices") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    int rows = 4 + static_cast<int>(rng() % 5);
    int cols = 4 + static_cast<int>(rng() % 5);
    int cap = 1 + static_cast<int>(rng() % 4);
    RatMat a = random_matrix(rng, rows, cols, cap);
    int r = rank_exact(a);
    CHECK(r <= cap);
    RatMat k = kernel_exact(a);
    CHECK(static_cast<int>(k.cols()) == cols - r);
    CHECK(product_is_zero(a, k));
    // Reduced form: unit rows at the free columns make independence obvious.
    CHECK(rank_exact(k) == k.cols());
  }
}

TEST_CASE("solve and inverse") {
  RatMat a(3, 3);
  a << 2, 1, 0, 0, 3, 1, 1, 0, 1;
  RatMat b(3, 1);
  b << 1, 2, 3;
  auto x = solve_exact(a, b);
  REQUIRE(x);
  RatMat res = a * (*x);
  CHECK(res == b);
  RatMat inv = inverse_exact(a);
  RatMat prod = a * inv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(prod(i, j) == (i == j ? 1 : 0));

  // Inconsistent system.
  RatMat c(2, 2);
  c << 1, 1, 1, 1;
  RatMat rhs(2, 1);
  rhs << 1, 2;
  CHECK(!solve_exact(c, rhs));
  CHECK_THROWS_AS(inverse_exact(c), std::domain_error);
}

TEST_CASE("modular kernels agree with exact ones") {
  std::mt19937_64 rng(67);
  uint64_t p = modular_primes()[0];
  for (int trial = 0; trial < 10; ++trial) {
    RatMat a = random_matrix(rng, 6, 7, 3);
    auto red = reduce_mod(a, p);
    REQUIRE(red);
    ModKernel mk = kernel_mod_p(*red, p);
    CHECK(mk.rank == rank_exact(a));
    // Verify A k = 0 mod p for each kernel column.
    for (Eigen::Index col = 0; col < mk.kernel.cols(); ++col)
      for (Eigen::Index i = 0; i < red->rows(); ++i) {
        unsigned __int128 s = 0;
        for (Eigen::Index j = 0; j < red->cols(); ++j)
          s += static_cast<unsigned __int128>((*red)(i, j)) * mk.kernel(j, col);
        CHECK(static_cast<uint64_t>(s % p) == 0);
      }
  }
}

TEST_CASE("rational reconstruction round trip") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 4000);
  mpz_class modulus = 1;
  for (size_t i = 0; i < 4; ++i) modulus *= static_cast<unsigned long>(modular_primes()[i]);
  for (int trial = 0; trial < 50; ++trial) {
    Rat q = rat(num(rng), den(rng));
    // Residue of q mod modulus.
    mpz_class deninv;
    mpz_class d = q.get_den();
    REQUIRE(mpz_invert(deninv.get_mpz_t(), d.get_mpz_t(), modulus.get_mpz_t()) != 0);
    mpz_class r = (q.get_num() % modulus * deninv) % modulus;
    if (r < 0) r += modulus;
    auto back = rational_reconstruct(r, modulus);
    REQUIRE(back);
    CHECK(*back == q);
  }
}

TEST_CASE("certified kernel matches the exact kernel") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 8; ++trial) {
    RatMat a = random_matrix(rng, 9, 8, 4);
    CertifiedKernel ck = certified_kernel(a, /*exact_threshold=*/0);  // force modular
    RatMat ke = kernel_exact(a);
    CHECK(ck.rank == rank_exact(a));
    CHECK(ck.kernel.cols() == ke.cols());
    CHECK(product_is_zero(a, ck.kernel));
    // Same column space: stacking does not increase the rank.
    if (ke.cols() > 0) {
      RatMat both(a.cols(), ke.cols() + ck.kernel.cols());
      both.block(0, 0, a.cols(), ke.cols()) = ke;
      both.block(0, ke.cols(), a.cols(), ck.kernel.cols()) = ck.kernel;
      CHECK(rank_exact(both) == ke.cols());
    }
    CHECK(certified_rank(a, 0) == rank_exact(a));
  }
}

TEST_CASE("inv_mod") {
  uint64_t p = modular_primes()[1];
  for (uint64_t a : {2ULL, 3ULL, 123456789ULL}) {
    uint64_t inv = inv_mod(a, p);
    CHECK((static_cast<unsigned __int128>(a) * inv) % p == 1);
  }
}
