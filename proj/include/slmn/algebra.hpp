#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

#include "slmn/dims.hpp"
#include "slmn/rational.hpp"
#include "slmn/tensor.hpp"
#include "slmn/weights.hpp"

namespace slmn {

/// Element of gl(m|n) as an (m+n)x(m+n) exact matrix; the parity grid comes
/// from Dims. Heterogeneous elements are split into even/odd parts on demand.
using SuperMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

SuperMatrix zero_matrix(Dims mn);
SuperMatrix unit_matrix(Dims mn, int i, int j);  // E_ij, 0-based
SuperMatrix identity_matrix(Dims mn);

/// Parity of a homogeneous matrix: 0, 1, or -1 if heterogeneous/zero-ambiguous
/// (zero matrix reports 0).
int matrix_parity(Dims mn, const SuperMatrix& a);

SuperMatrix even_part(Dims mn, const SuperMatrix& a);
SuperMatrix odd_part(Dims mn, const SuperMatrix& a);

Rat supertrace(Dims mn, const SuperMatrix& a);

/// Super commutator AB - (-1)^{|A||B|} BA, extended bilinearly over the
/// even/odd decomposition for heterogeneous inputs.
SuperMatrix bracket(Dims mn, const SuperMatrix& a, const SuperMatrix& b);

/// Killing form 2(m-n) sum_{i,j} (-1)^{|i|} A^i_j B^j_i.
Rat killing(Dims mn, const SuperMatrix& a, const SuperMatrix& b);

struct BasisElement {
  SuperMatrix mat;
  int parity = 0;
  std::vector<int> wt;  // weight as an integer coordinate vector
  int i = -1, j = -1;   // unit-matrix indices; -1 for Cartan elements
  bool is_cartan = false;
  std::string name;
};

/// Ordered basis of sl(m|n): all E_ij (i != j) row-major, then the Cartan
/// elements H_k = E_kk - s E_{k+1,k+1} with the sign making str(H_k) = 0.
struct SlBasis {
  Dims mn;
  std::vector<BasisElement> elems;

  int dim() const { return static_cast<int>(elems.size()); }
  const BasisElement& operator[](int a) const { return elems[a]; }

  /// Index of E_ij / H_k in the ordering above.
  int index_of_unit(int i, int j) const;
  int index_of_cartan(int k) const;

  /// Coordinates of a supertraceless matrix in this basis. Throws when the
  /// input is not in sl(m|n).
  RatVec coords(const SuperMatrix& x) const;

  /// Simple positive root vectors E_{i,i+1}, i = 0..m+n-2.
  std::vector<int> simple_raising_indices() const;
  /// All positive root vectors E_ij with i < j.
  std::vector<int> positive_raising_indices() const;

  Weight weight_of(int a) const;
};

SlBasis sl_basis(Dims mn);

/// Matrix of ad(Z) on sl(m|n) in the given basis (columns = images).
RatMat ad_matrix(const SlBasis& basis, const SuperMatrix& z);

/// The quadratic Casimir element as a 2-slot tensor in g (x) g, built from
/// bases dual with respect to the supertrace form str(AB). `pair_coeffs`
/// carries the same element as sum_{a,c} pair_coeffs(a,c) b_a (x) b_c.
struct CasimirTensor {
  SuperTensor tensor;
  RatMat pair_coeffs;
};

CasimirTensor casimir_tensor(Dims mn);

/// Eigenvalue decomposition of ad(E_11): (A_-, A_0, A_+) with eigenvalues
/// (-1, 0, +1); A_- is spanned by first-column entries E_{j0}, A_+ by E_{0j}.
std::array<SuperMatrix, 3> grade3(Dims mn, const SuperMatrix& a);

/// g as a 2-slot tensor and back.
SuperTensor matrix_to_tensor(Dims mn, const SuperMatrix& a);
SuperMatrix tensor_to_matrix(const SuperTensor& t);

}  // namespace slmn
