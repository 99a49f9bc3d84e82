#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "slmn/dims.hpp"
#include "slmn/rational.hpp"

namespace slmn {

using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

/// Element of h* in the C^(m+n) convention: first m coordinates are
/// epsilon-coefficients, the last n delta-coefficients, coefficient sum zero.
class Weight {
 public:
  Weight(Dims mn, RatVec coords);

  /// Zero weight.
  explicit Weight(Dims mn);

  const Dims& mn() const { return mn_; }
  const RatVec& coords() const { return coords_; }
  const Rat& operator[](int i) const { return coords_[i]; }

  /// eps_i - eps_j with 0-based indices into the full range [0, m+n);
  /// indices >= m address delta coordinates.
  static Weight root(Dims mn, int i, int j);

  bool is_zero() const;
  bool is_integer_vector() const;

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight operator*(const Rat& c) const;
  bool operator==(const Weight& o) const;
  bool operator!=(const Weight& o) const { return !(*this == o); }
  bool operator<(const Weight& o) const;  // lexicographic, for ordered containers

  std::string str() const;

 private:
  Dims mn_;
  RatVec coords_;
};

/// Positive roots and the distinguished simple system of sl(m|n).
struct RootSystem {
  Dims mn;
  std::vector<Weight> positive_even;
  std::vector<Weight> positive_odd;
  std::vector<Weight> simple;  // eps_1-eps_2, ..., eps_m-delta_1, ..., delta_{n-1}-delta_n
};

RootSystem root_system(Dims mn);

/// The Weyl vector: eps_i-coefficient (m-n-2i+1)/2, delta_j-coefficient
/// (n+m-2j+1)/2 (1-based i, j).
Weight rho(Dims mn);

/// The standard bilinear form: (eps_i,eps_j)=delta_ij, (delta_i,delta_j)=-delta_ij,
/// (eps_i,delta_j)=0. Symmetric and bilinear.
Rat form_eval(const Weight& lam, const Weight& mu);

/// (lam + 2 rho, lam): the scalar through which the quadratic Casimir acts on a
/// highest weight vector of weight lam.
Rat casimir_eigenvalue(const Weight& lam);

/// Coroot 2a/(a,a). Throws for isotropic roots (odd roots have (a,a)=0).
Weight coroot(const Weight& alpha);

/// Highest weight of the Cartan power: k eps_1 - delta_{n-k+1} - ... - delta_n
/// for k <= n, and k eps_1 - (k-n) eps_m - delta_1 - ... - delta_n for k >= n.
Weight lambda_k(int k, Dims mn);

enum class Dominance { NotIntegral, NotDominant, DominantRegular };

/// Checks (lam + rho, alpha^vee) over the even positive roots: integrality
/// first, then strict positivity. Odd roots are isotropic and excluded.
Dominance dominance_status(const Weight& lam);

inline bool is_dominant_regular(const Weight& lam) {
  return dominance_status(lam) == Dominance::DominantRegular;
}

}  // namespace slmn
