#pragma once

#include <stdexcept>

#include "slmn/algebra.hpp"
#include "slmn/tensor.hpp"

namespace slmn {

/// K = 2(m-n) str_{1,4} o str_{2,3} on 4-slot tensors; for A, B in g,
/// kappa(A (x) B) equals the Killing form <A, B>.
template <typename Scalar>
Scalar kappa(const SuperTensorT<Scalar>& t) {
  if (t.signature() != pair_signature(2))
    throw std::invalid_argument("kappa: signature must be (V,V*,V,V*)");
  auto inner = contract_str(t, 1, 2);
  auto sc = contract_str(inner, 0, 1);
  Scalar v = scalar_of(sc);
  return v * Rat(2 * t.mn().t());
}

struct PhiConstants {
  Rat a;
  Rat c1;
  Rat c2;
};

/// a = t/(t^2-4), c1 = (t^2+2)/(t(1-t^2)), c2 = 3/(t^2-1) with t = m-n.
inline PhiConstants phi_constants(Dims mn) {
  if (mn.t() * mn.t() <= 4)
    throw std::domain_error("phi: |m-n| > 2 required (constants' denominators vanish)");
  const long t = mn.t();
  PhiConstants k;
  k.a = rat(t, t * t - 4);
  k.c1 = rat(t * t + 2, t * (1 - t * t));
  k.c2 = rat(3, t * t - 1);
  return k;
}

/// The six-term section V (x) V* -> V (x) V* (x) V (x) V* with prescribed
/// constants (the perturbed-constants negative control enters here).
template <typename Scalar>
SuperTensorT<Scalar> phi_with_constants(const SuperTensorT<Scalar>& b, const Rat& a, const Rat& c1,
                                        const Rat& c2) {
  if (b.signature() != pair_signature(1))
    throw std::invalid_argument("phi: input signature must be (V, V*)");
  const Dims mn = b.mn();
  const int N = mn.N();
  const Rat inner = Rat(-2) / Rat(mn.t());
  Scalar strb = scalar_of(contract_str(b, 0, 1));

  SuperTensorT<Scalar> r(mn, pair_signature(2));
  auto key4 = [](int i, int j, int k, int l) {
    return tkey_set(tkey_set(tkey_set(tkey_set(TKey(0), 0, i), 1, j), 2, k), 3, l);
  };
  for (const auto& [bk, bv] : b.components()) {
    const int x = tkey_get(bk, 0), y = tkey_get(bk, 1);
    for (int d = 0; d < N; ++d) {
      // (-1)^{|k|} B^i_l d^k_j : component (x, d, d, y)
      Scalar v1 = bv * (mn.parity(d) ? -a : a);
      r.add(key4(x, d, d, y), v1);
      // (-1)^{(|i|+|j|)(|k|+|l|)+|i|} B^k_j d^i_l : component (d, y, x, d)
      int e2 = (mn.parity(d) + mn.parity(y)) * (mn.parity(x) + mn.parity(d)) + mn.parity(d);
      Scalar v2 = bv * ((e2 & 1) ? -a : a);
      r.add(key4(d, y, x, d), v2);
      // -2/t B^i_j d^k_l : component (x, y, d, d)
      r.add(key4(x, y, d, d), bv * (a * inner));
      // -2/t (-1)^{(|i|+|j|)(|k|+|l|)} B^k_l d^i_j : (d, d, x, y); i=j kills the sign
      r.add(key4(d, d, x, y), bv * (a * inner));
    }
  }
  if (!scalar::is_zero(strb)) {
    for (int d1 = 0; d1 < N; ++d1)
      for (int d2 = 0; d2 < N; ++d2) {
        // c1 (-1)^{|k|} str(B) d^i_l d^k_j : (d1, d2, d2, d1)
        Scalar v5 = strb * (mn.parity(d2) ? -(a * c1) : (a * c1));
        r.add(key4(d1, d2, d2, d1), v5);
        // c2 str(B) d^i_j d^k_l : (d1, d1, d2, d2)
        r.add(key4(d1, d1, d2, d2), strb * (a * c2));
      }
  }
  return r;
}

template <typename Scalar>
SuperTensorT<Scalar> phi(const SuperTensorT<Scalar>& b) {
  PhiConstants k = phi_constants(b.mn());
  return phi_with_constants(b, k.a, k.c1, k.c2);
}

/// phi applied to the Kronecker delta; spans the trivial summand.
SuperTensor phi_delta(Dims mn);

/// The section g -> g /\ g from the antisymmetric side:
/// (m-n)^{-1} ( (-1)^{|k|} B^i_l d^k_j - (-1)^{(|i|+|j|)(|k|+|l|)+|i|} B^k_j d^i_l ).
template <typename Scalar>
SuperTensorT<Scalar> psi(const SuperTensorT<Scalar>& b) {
  if (b.signature() != pair_signature(1))
    throw std::invalid_argument("psi: input signature must be (V, V*)");
  const Dims mn = b.mn();
  if (!scalar::is_zero(scalar_of(contract_str(b, 0, 1))))
    throw std::invalid_argument("psi: input must be supertraceless");
  const int N = mn.N();
  const Rat c = Rat(1) / Rat(mn.t());
  SuperTensorT<Scalar> r(mn, pair_signature(2));
  auto key4 = [](int i, int j, int k, int l) {
    return tkey_set(tkey_set(tkey_set(tkey_set(TKey(0), 0, i), 1, j), 2, k), 3, l);
  };
  for (const auto& [bk, bv] : b.components()) {
    const int x = tkey_get(bk, 0), y = tkey_get(bk, 1);
    for (int d = 0; d < N; ++d) {
      Scalar v1 = bv * (mn.parity(d) ? -c : c);
      r.add(key4(x, d, d, y), v1);
      int e2 = (mn.parity(d) + mn.parity(y)) * (mn.parity(x) + mn.parity(d)) + mn.parity(d);
      Scalar v2 = bv * ((e2 & 1) ? c : -c);
      r.add(key4(d, y, x, d), v2);
    }
  }
  return r;
}

/// Super symmetrisation in the upper indices: average with the slot-1/slot-3
/// exchange, whose composed adjacent-swap sign is
/// (-1)^{|i||j|+|i||k|+|j||k|} -- the sign pattern of the B-projector.
template <typename Scalar>
SuperTensorT<Scalar> upper_sym(const SuperTensorT<Scalar>& t) {
  auto s = permute_signed(t, SlotPermutation::swap(4, 0, 2));
  s += t;
  s.scale(rat(1, 2));
  return s;
}

/// Super symmetrisation across the two (V, V*) factors.
template <typename Scalar>
SuperTensorT<Scalar> pair_sym(const SuperTensorT<Scalar>& t) {
  auto s = permute_signed(t, SlotPermutation::swap_pairs(4, 0, 1));
  s += t;
  s.scale(rat(1, 2));
  return s;
}

template <typename Scalar>
bool is_pair_supertraceless(const SuperTensorT<Scalar>& t) {
  for (int p = 0; 2 * p + 1 < t.slots(); ++p)
    if (!contract_str(t, 2 * p, 2 * p + 1).is_zero()) return false;
  return true;
}

/// chi = phi o str_{2,3}; idempotent projector onto im(phi) inside g (.) g.
template <typename Scalar>
SuperTensorT<Scalar> chi(const SuperTensorT<Scalar>& a) {
  if (a.signature() != pair_signature(2))
    throw std::invalid_argument("chi: signature must be (V,V*,V,V*)");
  return phi(contract_str(a, 1, 2));
}

template <typename Scalar>
struct SymDecomposition {
  SuperTensorT<Scalar> B;  // Cartan summand component
  SuperTensorT<Scalar> C;
  SuperTensorT<Scalar> D;
  SuperTensorT<Scalar> E;  // trivial summand component
};

/// A = B + C + D + E for A in g (.) g:
///   B = upper_sym(A - chi(A)), C = (A - chi(A)) - B,
///   E = (2(m-n)^2)^{-1} kappa(A) phi(delta), D = chi(A) - E.
template <typename Scalar>
SymDecomposition<Scalar> decompose_sym(const SuperTensorT<Scalar>& a, bool validate = true) {
  const Dims mn = a.mn();
  if (mn.t() * mn.t() <= 4) throw std::domain_error("decompose_sym: |m-n| > 2 required");
  if (validate) {
    if (permute_signed(a, SlotPermutation::swap_pairs(4, 0, 1)) != a)
      throw std::invalid_argument("decompose_sym: input is not supersymmetric across pairs");
    if (!is_pair_supertraceless(a))
      throw std::invalid_argument("decompose_sym: input pairs are not supertraceless");
  }
  SymDecomposition<Scalar> d;
  auto chi_a = chi(a);
  auto rest = a - chi_a;
  d.B = upper_sym(rest);
  d.C = rest - d.B;
  Scalar kap = kappa(a);
  SuperTensorT<Scalar> e(mn, pair_signature(2));
  {
    SuperTensor pd = phi_delta(mn);
    Rat norm = Rat(1) / Rat(2 * mn.t() * mn.t());
    for (const auto& [k, v] : pd.components()) e.add(k, kap * (v * norm));
  }
  d.E = e;
  d.D = chi_a - e;
  return d;
}

/// Projection of X (x) Y onto the Cartan summand g (o) g.
SuperTensor cartan_product(Dims mn, const SuperMatrix& x, const SuperMatrix& y);

/// T minus the Cartan component of its symmetrisation; projector onto the
/// complement I_2 of g (o) g inside g (x) g.
template <typename Scalar>
SuperTensorT<Scalar> project_offcartan(const SuperTensorT<Scalar>& t) {
  if (t.signature() != pair_signature(2))
    throw std::invalid_argument("project_offcartan: signature must be (V,V*,V,V*)");
  auto sym = pair_sym(t);
  auto chi_s = chi(sym);
  auto b = upper_sym(sym - chi_s);
  return t - b;
}

}  // namespace slmn
