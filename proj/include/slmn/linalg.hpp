#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "slmn/rational.hpp"

namespace slmn {

using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using IntMat = Eigen::Matrix<mpz_class, Eigen::Dynamic, Eigen::Dynamic>;

/// Row echelon data computed over the rationals (fraction-free internally).
struct Echelon {
  int rank = 0;
  std::vector<int> pivot_cols;
};

/// Fraction-free (Bareiss) elimination on a denominator-cleared copy; returns
/// rank and pivot columns. The input is not modified.
Echelon echelon_exact(const RatMat& a);

int rank_exact(const RatMat& a);

/// Kernel basis over the rationals, in reduced form: for each non-pivot column
/// f the basis vector has entry 1 at f and zeros at the other free columns.
/// Columns of the result are the basis vectors.
RatMat kernel_exact(const RatMat& a);

/// Solve A x = b exactly. Returns nullopt when inconsistent. When the system
/// is underdetermined, free variables are set to zero.
std::optional<RatMat> solve_exact(const RatMat& a, const RatMat& b);

/// Exact inverse; throws if singular.
RatMat inverse_exact(const RatMat& a);

// ---------------------------------------------------------------------------
// Modular arithmetic and certified multi-modular kernels.
//
// The modular path accelerates the large exact kernels: kernels are computed
// mod several word-size primes, combined by CRT, lifted to rationals by
// rational reconstruction, and then *verified exactly*. A verified kernel of
// size v together with a mod-p rank r satisfying r + v = ncols certifies both
// the rank and the kernel exactly (mod-p rank never exceeds the exact rank).
// ---------------------------------------------------------------------------

using U64Mat = Eigen::Matrix<uint64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Primes just below 2^31 so products fit comfortably in uint64.
const std::vector<uint64_t>& modular_primes();

uint64_t inv_mod(uint64_t a, uint64_t p);

/// Reduce a rational matrix mod p. Fails (nullopt) if a denominator vanishes
/// mod p; callers then move on to the next prime.
std::optional<U64Mat> reduce_mod(const RatMat& a, uint64_t p);

struct ModKernel {
  int rank = 0;
  std::vector<int> pivot_cols;
  std::vector<int> free_cols;
  U64Mat kernel;  // columns = kernel basis mod p, reduced form
};

ModKernel kernel_mod_p(U64Mat a, uint64_t p);

/// Rational reconstruction of r mod m (Wang bounds). nullopt if none exists.
std::optional<Rat> rational_reconstruct(const mpz_class& r, const mpz_class& m);

struct CertifiedKernel {
  int rank = 0;
  RatMat kernel;  // exact, verified columns
  bool used_modular = false;
};

/// Exact kernel with certification. Matrices at or below `exact_threshold`
/// columns go straight to fraction-free elimination; larger ones use the
/// multi-modular path (with exact verification), falling back to the exact
/// path if reconstruction keeps failing.
CertifiedKernel certified_kernel(const RatMat& a, int exact_threshold = 64);

/// Exact rank via the certified kernel of the narrower orientation.
int certified_rank(const RatMat& a, int exact_threshold = 64);

}  // namespace slmn
