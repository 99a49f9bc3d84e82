#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "slmn/algebra.hpp"
#include "slmn/joseph.hpp"
#include "slmn/tensor.hpp"

namespace slmn {

/// Normal-ordered term of the super Weyl algebra on m-1 even and n odd
/// variables: all multiplication operators left of all derivatives, odd
/// generators with exponent <= 1, odd blocks in ascending index order.
struct WeylTerm {
  uint64_t xdeg = 0;  // 4 bits per even variable
  uint64_t ddeg = 0;
  uint32_t xodd = 0;  // bitmask over the n odd variables
  uint32_t dodd = 0;

  friend bool operator==(const WeylTerm& a, const WeylTerm& b) {
    return a.xdeg == b.xdeg && a.ddeg == b.ddeg && a.xodd == b.xodd && a.dodd == b.dodd;
  }
};

struct WeylTermHash {
  size_t operator()(const WeylTerm& t) const {
    uint64_t h = t.xdeg * 0x9E3779B97F4A7C15ULL;
    h ^= t.ddeg + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h ^= (uint64_t(t.xodd) << 32 | t.dodd) + (h << 6) + (h >> 2);
    return static_cast<size_t>(h);
  }
};

/// Element of the super Weyl algebra with exact coefficients. Variables are
/// labeled by their 1-based column index j in [2, m+n]; j <= m is even.
class WeylOp {
 public:
  WeylOp() = default;
  explicit WeylOp(Dims mn) : mn_(mn) {}

  static WeylOp zero(Dims mn) { return WeylOp(mn); }
  static WeylOp constant(Dims mn, const Rat& c);
  static WeylOp x(Dims mn, int j);
  static WeylOp d(Dims mn, int j);
  /// The Euler operator sum_j x_j d_j.
  static WeylOp euler(Dims mn);

  const Dims& mn() const { return mn_; }
  const std::unordered_map<WeylTerm, Rat, WeylTermHash>& terms() const { return terms_; }

  bool is_zero() const;
  /// 0/1 if homogeneous, -1 otherwise (zero reports 0).
  int parity() const;

  void add_term(const WeylTerm& t, const Rat& c);

  WeylOp& operator+=(const WeylOp& o);
  WeylOp& operator-=(const WeylOp& o);
  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
  WeylOp operator-() const;
  WeylOp& scale(const Rat& c);

  bool operator==(const WeylOp& o) const;
  bool operator!=(const WeylOp& o) const { return !(*this == o); }

  /// Deterministic rendering for reports, e.g. "1 - x2*d2" at (4,1).
  std::string str() const;

  /// Coefficient of the identity (the scalar part).
  Rat constant_coefficient() const;

  /// Purely multiplication operators (no derivatives)?
  bool is_polynomial() const;

 private:
  Dims mn_;
  std::unordered_map<WeylTerm, Rat, WeylTermHash> terms_;
};

/// Associative normally-ordered product.
WeylOp weyl_mul(const WeylOp& p, const WeylOp& q);

/// Super commutator P Q - (-1)^{|P||Q|} Q P for homogeneous operators.
WeylOp weyl_bracket(const WeylOp& p, const WeylOp& q);

/// Apply an operator to a polynomial (a derivative-free WeylOp).
WeylOp act_on_poly(const WeylOp& op, const WeylOp& poly);

/// The realization of sl(m|n) on polynomial differential operators attached to
/// the character value mu: E_{j1} -> x_j, E_{1j} -> (mu - E) d_j, and the
/// zero-graded images defined through brackets of those (route-checked).
class Realization {
 public:
  Realization(Dims mn, Rat mu);

  const Dims& mn() const { return mn_; }
  const Rat& mu() const { return mu_; }
  const SlBasis& basis() const { return basis_; }

  const WeylOp& image(int basis_index) const { return images_[basis_index]; }

  /// Linear extension to any supertraceless matrix.
  WeylOp of_matrix(const SuperMatrix& x) const;

  /// Image of the elementary matrix E_ij under the extension of the
  /// realization to gl (the identity acts by zero); for tensors with
  /// supertraceless slot pairs this extension drops out.
  const WeylOp& unit_image(int i, int j) const { return unit_images_[i * mn_.N() + j]; }

  /// Image of a product of two elementary matrices, cached.
  const WeylOp& unit_pair_image(int i, int j, int k, int l) const;

 private:
  Dims mn_;
  Rat mu_;
  SlBasis basis_;
  std::vector<WeylOp> images_;
  std::vector<WeylOp> unit_images_;
  mutable std::vector<WeylOp> pair_cache_;
  mutable std::vector<char> pair_cached_;
};

/// Componentwise image of a tensor in a (<= 3)-fold power of g, multiplying
/// slot images in order. Requires all slot pairs supertraceless.
WeylOp realize_tensor(const Realization& pi, const SuperTensor& t);

/// Image of a filtered element with the formal parameter instantiated.
WeylOp realize_filtered(const Realization& pi, const FilteredElement& e, const Rat& lambda_value);

struct HomomorphismReport {
  bool pass = false;
  long pairs_checked = 0;
  std::string first_failure;
};

/// Exact verification of pi[X]pi[Y] - (-1)^{|X||Y|} pi[Y]pi[X] = pi[[X,Y]]
/// over every ordered basis pair.
HomomorphismReport check_homomorphism(const Realization& pi, int jobs = 1);

struct AnnihilationReport {
  Dims mn;
  Rat mu;
  Rat lambda_c;
  bool cde_pass = false;   // pi(C) = 0, pi(D) = 0, pi(E) = lambda_c K(A) over a basis
  bool rela_pass = false;  // the quadratic relation for every ordered pair
  bool generators_pass = false;  // every ideal generator maps to zero
  std::vector<std::string> failing_cases;
  bool pass() const { return cde_pass && rela_pass && generators_pass; }
};

std::string annihilation_report_json(const AnnihilationReport& r, bool homomorphism_pass);

/// The annihilation witness at the critical character mu = (n-m)/2 by
/// default; pass another mu for negative controls.
AnnihilationReport check_joseph_annihilated(Dims mn, std::optional<Rat> mu_override = std::nullopt,
                                            int jobs = 1);

/// Scalar through which the realized Casimir acts on the constant polynomial
/// (regression value; also checks the image commutes with every pi[basis]).
struct CasimirImageReport {
  Rat scalar_on_constant;
  bool commutes = false;
};
CasimirImageReport casimir_image(const Realization& pi);

/// Degree-<=3 cyclicity shadow: from the constant polynomial, repeated
/// application of basis images spans the whole degree-<=3 polynomial space.
bool cyclicity_shadow_deg3(const Realization& pi);

}  // namespace slmn
