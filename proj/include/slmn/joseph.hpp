#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slmn/algebra.hpp"
#include "slmn/tensor.hpp"
#include "slmn/tensorops.hpp"

namespace slmn {

/// Filtered-degree-<=2 element of the tensor algebra with coefficients affine
/// in the formal ideal parameter: deg2 in g (x) g, deg1 in g, deg0 a scalar.
struct FilteredElement {
  LambdaTensor deg2;  // 4 slots
  LambdaTensor deg1;  // 2 slots
  LambdaLinear deg0;

  explicit FilteredElement(Dims mn)
      : deg2(mn, pair_signature(2)), deg1(mn, pair_signature(1)), deg0(0) {}

  FilteredElement& operator+=(const FilteredElement& o) {
    deg2 += o.deg2;
    deg1 += o.deg1;
    deg0 += o.deg0;
    return *this;
  }
  friend FilteredElement operator+(FilteredElement a, const FilteredElement& b) { return a += b; }
  bool is_zero() const { return deg2.is_zero() && deg1.is_zero() && deg0.is_zero(); }
};

LambdaTensor lift_lambda(const SuperTensor& t);

/// The ideal-family generator X (x) Y - X (o) Y - 1/2 [X,Y] - lambda <X,Y>.
FilteredElement generator(Dims mn, const SuperMatrix& x, const SuperMatrix& y);

/// Canonical antiautomorphism on a k-factor tensor: reverse the factors with
/// the Koszul sign of the full reversal, times (-1)^k. An involution.
template <typename Scalar>
SuperTensorT<Scalar> tau(const SuperTensorT<Scalar>& t) {
  if (t.slots() % 2 != 0) throw std::invalid_argument("tau: expects (V,V*)^k signature");
  const int f = t.slots() / 2;
  auto r = permute_signed(t, SlotPermutation::reverse_pairs(f));
  if (f % 2 == 1) r.scale(Rat(-1));
  return r;
}

FilteredElement tau(const FilteredElement& e);

/// The special 6-slot tensor built from T in g (eight-term construction);
/// lies in (g /\ g) (x) g with no Cartan component on the factor pairs (1,2)
/// and (2,3).
SuperTensor s_tensor(Dims mn, const SuperMatrix& t);

struct STensorChecks {
  bool str_12 = false, str_34 = false, str_56 = false;
  bool antisym_in_first_two_factors = false;
  bool cartan_12_zero = false, cartan_23_zero = false;
  bool all() const {
    return str_12 && str_34 && str_56 && antisym_in_first_two_factors && cartan_12_zero &&
           cartan_23_zero;
  }
};
STensorChecks check_s_postconditions(const SuperTensor& s);

enum class ReducePair { Left, Right };

/// Reduce a 3-factor tensor modulo the quadratic ideal by substituting
/// X (x) Y -> 1/2 [X,Y] + lambda <X,Y> on an adjacent factor pair whose Cartan
/// component vanishes (asserted), then reducing the remaining degree-2 content
/// the same way (its Cartan component is asserted zero as well).
FilteredElement reduce_pair(const LambdaTensor& f, ReducePair side);

struct LambdaCReport {
  Dims mn;
  Rat lambda_c;
  Rat left_scalar;            // constant in lambda
  LambdaLinear right_scalar;  // affine in lambda
  bool per_T_consistent = false;
};

std::string lambda_c_report_json(const LambdaCReport& r);

/// Runs both reductions of the special tensor over every basis element of g,
/// solves the affine equation equating them, and certifies the unique
/// critical parameter -1/(8(m-n+1)).
LambdaCReport derive_lambda_c(Dims mn);

/// tau(gen(X,Y)) == (-1)^{|X||Y|} gen(Y,X), checked for every ordered basis
/// pair; the exact identity behind tau-stability of the generating space.
bool tau_generator_identity(Dims mn);

/// Rank-based form of the same statement: the span of all generators is
/// mapped onto itself by tau. Quadratic in dim g; intended for desk cases.
bool tau_span_stable(Dims mn);

/// rank{deg2 parts of generators} == dim g(x)g - dim(Cartan summand), i.e. the
/// degree-2 parts span exactly the complement I_2.
bool generators_span_I2(Dims mn);

}  // namespace slmn
