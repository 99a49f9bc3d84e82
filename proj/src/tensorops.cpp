#include "slmn/tensorops.hpp"

namespace slmn {

SuperTensor phi_delta(Dims mn) {
  return phi(matrix_to_tensor(mn, identity_matrix(mn)));
}

SuperTensor cartan_product(Dims mn, const SuperMatrix& x, const SuperMatrix& y) {
  if (supertrace(mn, x) != 0 || supertrace(mn, y) != 0)
    throw std::invalid_argument("cartan_product: factors must be in sl(m|n)");
  SuperTensor t = outer(matrix_to_tensor(mn, x), matrix_to_tensor(mn, y));
  auto d = decompose_sym(pair_sym(t), /*validate=*/false);
  return d.B;
}

}  // namespace slmn
