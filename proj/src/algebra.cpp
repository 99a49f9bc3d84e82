#include "slmn/algebra.hpp"

#include <stdexcept>

#include "slmn/linalg.hpp"

namespace slmn {

SuperMatrix zero_matrix(Dims mn) {
  SuperMatrix z(mn.N(), mn.N());
  z.setConstant(Rat(0));
  return z;
}

SuperMatrix unit_matrix(Dims mn, int i, int j) {
  SuperMatrix z = zero_matrix(mn);
  z(i, j) = 1;
  return z;
}

SuperMatrix identity_matrix(Dims mn) {
  SuperMatrix z = zero_matrix(mn);
  for (int i = 0; i < mn.N(); ++i) z(i, i) = 1;
  return z;
}

int matrix_parity(Dims mn, const SuperMatrix& a) {
  bool has_even = false, has_odd = false;
  for (int i = 0; i < mn.N(); ++i)
    for (int j = 0; j < mn.N(); ++j) {
      if (a(i, j) == 0) continue;
      ((mn.parity(i) + mn.parity(j)) % 2 ? has_odd : has_even) = true;
    }
  if (has_even && has_odd) return -1;
  return has_odd ? 1 : 0;
}

SuperMatrix even_part(Dims mn, const SuperMatrix& a) {
  SuperMatrix z = zero_matrix(mn);
  for (int i = 0; i < mn.N(); ++i)
    for (int j = 0; j < mn.N(); ++j)
      if ((mn.parity(i) + mn.parity(j)) % 2 == 0) z(i, j) = a(i, j);
  return z;
}

SuperMatrix odd_part(Dims mn, const SuperMatrix& a) {
  SuperMatrix z = zero_matrix(mn);
  for (int i = 0; i < mn.N(); ++i)
    for (int j = 0; j < mn.N(); ++j)
      if ((mn.parity(i) + mn.parity(j)) % 2 == 1) z(i, j) = a(i, j);
  return z;
}

Rat supertrace(Dims mn, const SuperMatrix& a) {
  Rat s(0);
  for (int i = 0; i < mn.N(); ++i) s += Rat(mn.sign(i)) * a(i, i);
  return s;
}

namespace {

SuperMatrix bracket_homogeneous(Dims mn, const SuperMatrix& a, int pa, const SuperMatrix& b,
                                int pb) {
  SuperMatrix ab = a * b;
  SuperMatrix ba = b * a;
  if (pa && pb) return ab + ba;
  return ab - ba;
}

}  // namespace

SuperMatrix bracket(Dims mn, const SuperMatrix& a, const SuperMatrix& b) {
  SuperMatrix ae = even_part(mn, a), ao = odd_part(mn, a);
  SuperMatrix be = even_part(mn, b), bo = odd_part(mn, b);
  return bracket_homogeneous(mn, ae, 0, be, 0) + bracket_homogeneous(mn, ae, 0, bo, 1) +
         bracket_homogeneous(mn, ao, 1, be, 0) + bracket_homogeneous(mn, ao, 1, bo, 1);
}

Rat killing(Dims mn, const SuperMatrix& a, const SuperMatrix& b) {
  Rat s(0);
  for (int i = 0; i < mn.N(); ++i)
    for (int j = 0; j < mn.N(); ++j) {
      if (a(i, j) == 0 || b(j, i) == 0) continue;
      s += Rat(mn.sign(i)) * a(i, j) * b(j, i);
    }
  return Rat(2 * mn.t()) * s;
}

int SlBasis::index_of_unit(int i, int j) const {
  if (i == j) throw std::invalid_argument("index_of_unit: diagonal is not a basis unit");
  const int N = mn.N();
  // Row-major over off-diagonal positions.
  return i * (N - 1) + (j > i ? j - 1 : j);
}

int SlBasis::index_of_cartan(int k) const {
  const int N = mn.N();
  return N * (N - 1) + k;
}

std::vector<int> SlBasis::simple_raising_indices() const {
  std::vector<int> out;
  for (int i = 0; i + 1 < mn.N(); ++i) out.push_back(index_of_unit(i, i + 1));
  return out;
}

std::vector<int> SlBasis::positive_raising_indices() const {
  std::vector<int> out;
  for (int i = 0; i < mn.N(); ++i)
    for (int j = i + 1; j < mn.N(); ++j) out.push_back(index_of_unit(i, j));
  return out;
}

Weight SlBasis::weight_of(int a) const {
  RatVec c(mn.N());
  for (int i = 0; i < mn.N(); ++i) c[i] = elems[a].wt[i];
  return Weight(mn, std::move(c));
}

RatVec SlBasis::coords(const SuperMatrix& x) const {
  if (supertrace(mn, x) != 0)
    throw std::invalid_argument("SlBasis::coords: matrix is not supertraceless");
  const int N = mn.N();
  RatVec c(dim());
  c.setConstant(Rat(0));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) c[index_of_unit(i, j)] = x(i, j);
  // Diagonal part: solve d = sum_k c_k H_k. The H_k form a chain, so solve by
  // forward substitution on the first N-1 diagonal entries.
  Rat carry(0);
  for (int k = 0; k < N - 1; ++k) {
    // H_k contributes +1 at position k; earlier H_{k-1} contributed -s at k.
    Rat ck = x(k, k) - carry;
    c[index_of_cartan(k)] = ck;
    int s = (mn.parity(k) == mn.parity(k + 1)) ? 1 : -1;
    carry = -Rat(s) * ck;
  }
  if (x(N - 1, N - 1) != carry)
    throw std::invalid_argument("SlBasis::coords: inconsistent diagonal (not in sl)");
  return c;
}

SlBasis sl_basis(Dims mn) {
  SlBasis b;
  b.mn = mn;
  const int N = mn.N();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      BasisElement e;
      e.mat = unit_matrix(mn, i, j);
      e.parity = (mn.parity(i) + mn.parity(j)) % 2;
      e.wt.assign(N, 0);
      e.wt[i] = 1;
      e.wt[j] = -1;
      e.i = i;
      e.j = j;
      e.name = "E" + std::to_string(i + 1) + "," + std::to_string(j + 1);
      b.elems.push_back(std::move(e));
    }
  for (int k = 0; k + 1 < N; ++k) {
    BasisElement e;
    int s = (mn.parity(k) == mn.parity(k + 1)) ? 1 : -1;
    e.mat = unit_matrix(mn, k, k) - Rat(s) * unit_matrix(mn, k + 1, k + 1);
    e.parity = 0;
    e.wt.assign(N, 0);
    e.is_cartan = true;
    e.name = "H" + std::to_string(k + 1);
    b.elems.push_back(std::move(e));
  }
  return b;
}

RatMat ad_matrix(const SlBasis& basis, const SuperMatrix& z) {
  RatMat m(basis.dim(), basis.dim());
  m.setConstant(Rat(0));
  for (int a = 0; a < basis.dim(); ++a) {
    SuperMatrix img = bracket(basis.mn, z, basis[a].mat);
    RatVec col = basis.coords(img);
    for (int r = 0; r < basis.dim(); ++r) m(r, a) = col[r];
  }
  return m;
}

CasimirTensor casimir_tensor(Dims mn) {
  SlBasis basis = sl_basis(mn);
  const int d = basis.dim();
  RatMat gram(d, d);
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c)
      gram(a, c) = supertrace(mn, SuperMatrix(basis[a].mat * basis[c].mat));
  RatMat ginv = inverse_exact(gram);

  // Left duals: str(x^a x_b) = delta_ab, so x^a = sum_c (G^-1)_{ac} b_c and the
  // invariant element is sum_a b_a (x) x^a = sum_{a,c} (G^-1)_{ac} b_a (x) b_c.
  CasimirTensor out;
  out.pair_coeffs = ginv;
  out.tensor = SuperTensor(mn, pair_signature(2));
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      if (ginv(a, c) == 0) continue;
      SuperTensor term = outer(matrix_to_tensor(mn, basis[a].mat),
                               matrix_to_tensor(mn, basis[c].mat));
      term.scale(ginv(a, c));
      out.tensor += term;
    }
  return out;
}

std::array<SuperMatrix, 3> grade3(Dims mn, const SuperMatrix& a) {
  SuperMatrix minus = zero_matrix(mn), zero = zero_matrix(mn), plus = zero_matrix(mn);
  for (int i = 0; i < mn.N(); ++i)
    for (int j = 0; j < mn.N(); ++j) {
      if (a(i, j) == 0) continue;
      int k = (i == 0 ? 1 : 0) - (j == 0 ? 1 : 0);
      (k < 0 ? minus : (k > 0 ? plus : zero))(i, j) = a(i, j);
    }
  return {minus, zero, plus};
}

SuperTensor matrix_to_tensor(Dims mn, const SuperMatrix& a) {
  SuperTensor t(mn, pair_signature(1));
  for (int i = 0; i < mn.N(); ++i)
    for (int j = 0; j < mn.N(); ++j) {
      if (a(i, j) == 0) continue;
      TKey k = tkey_set(tkey_set(0, 0, i), 1, j);
      t.set(k, a(i, j));
    }
  return t;
}

SuperMatrix tensor_to_matrix(const SuperTensor& t) {
  if (t.signature() != pair_signature(1))
    throw std::invalid_argument("tensor_to_matrix: signature is not (V, V*)");
  SuperMatrix a = zero_matrix(t.mn());
  for (const auto& [k, v] : t.components()) a(tkey_get(k, 0), tkey_get(k, 1)) = v;
  return a;
}

}  // namespace slmn
