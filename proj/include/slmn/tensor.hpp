#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "slmn/dims.hpp"
#include "slmn/rational.hpp"

namespace slmn {

enum class Slot : uint8_t { V, Vd };

using Signature = std::vector<Slot>;

/// Standard signature (V, V*, V, V*, ...) of tensor powers of V (x) V*.
inline Signature pair_signature(int pairs) {
  Signature s;
  for (int p = 0; p < pairs; ++p) {
    s.push_back(Slot::V);
    s.push_back(Slot::Vd);
  }
  return s;
}

/// Multi-index packing: 4 bits per slot, slot 0 in the low bits.
using TKey = uint64_t;

inline TKey tkey_set(TKey k, int slot, int idx) {
  return (k & ~(TKey(0xF) << (4 * slot))) | (TKey(idx) << (4 * slot));
}
inline int tkey_get(TKey k, int slot) { return int((k >> (4 * slot)) & 0xF); }

/// Sparse multi-slot tensor over mixed powers of V and V*, with exact
/// coefficients. Parity of a slot entry is the parity of its index; every
/// sign rule is generated by the adjacent-transposition primitive below.
template <typename Scalar>
class SuperTensorT {
 public:
  SuperTensorT() = default;
  SuperTensorT(Dims mn, Signature sig) : mn_(mn), sig_(std::move(sig)) {
    if (static_cast<int>(sig_.size()) > 15)
      throw std::invalid_argument("SuperTensorT: too many slots");
  }

  const Dims& mn() const { return mn_; }
  const Signature& signature() const { return sig_; }
  int slots() const { return static_cast<int>(sig_.size()); }

  const std::unordered_map<TKey, Scalar>& components() const { return comp_; }

  bool is_zero() const {
    for (const auto& [k, v] : comp_)
      if (!scalar::is_zero(v)) return false;
    return true;
  }

  size_t nnz() const { return comp_.size(); }

  void add(TKey key, const Scalar& v) {
    if (scalar::is_zero(v)) return;
    auto it = comp_.find(key);
    if (it == comp_.end()) {
      comp_.emplace(key, v);
    } else {
      it->second += v;
      if (scalar::is_zero(it->second)) comp_.erase(it);
    }
  }

  void set(TKey key, Scalar v) {
    if (scalar::is_zero(v))
      comp_.erase(key);
    else
      comp_[key] = std::move(v);
  }

  Scalar at(TKey key) const {
    auto it = comp_.find(key);
    return it == comp_.end() ? Scalar(0) : it->second;
  }

  /// Convenience for explicit indices.
  Scalar at_idx(std::initializer_list<int> idx) const {
    TKey k = 0;
    int s = 0;
    for (int i : idx) k = tkey_set(k, s++, i);
    if (s != slots()) throw std::invalid_argument("at_idx: wrong index count");
    return at(k);
  }

  SuperTensorT& operator+=(const SuperTensorT& o) {
    require_same_shape(o);
    for (const auto& [k, v] : o.comp_) add(k, v);
    return *this;
  }
  SuperTensorT& operator-=(const SuperTensorT& o) {
    require_same_shape(o);
    for (const auto& [k, v] : o.comp_) add(k, negate(v));
    return *this;
  }
  friend SuperTensorT operator+(SuperTensorT a, const SuperTensorT& b) { return a += b; }
  friend SuperTensorT operator-(SuperTensorT a, const SuperTensorT& b) { return a -= b; }

  SuperTensorT operator-() const {
    SuperTensorT r(mn_, sig_);
    for (const auto& [k, v] : comp_) r.comp_.emplace(k, negate(v));
    return r;
  }

  template <typename C>
  SuperTensorT& scale(const C& c) {
    if (scalar::is_zero(Scalar(c))) {
      comp_.clear();
      return *this;
    }
    for (auto& [k, v] : comp_) v = v * c;
    return *this;
  }

  template <typename C>
  friend SuperTensorT operator*(const C& c, SuperTensorT t) {
    return t.scale(c);
  }

  bool operator==(const SuperTensorT& o) const {
    if (mn_ != o.mn_ || sig_ != o.sig_) return false;
    SuperTensorT d = *this;
    d -= o;
    return d.is_zero();
  }
  bool operator!=(const SuperTensorT& o) const { return !(*this == o); }

  /// Deterministic (sorted) key order, for serialization and printing.
  std::vector<TKey> sorted_keys() const {
    std::vector<TKey> ks;
    ks.reserve(comp_.size());
    for (const auto& [k, v] : comp_) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    return ks;
  }

  int parity_at(TKey key, int slot) const { return mn_.parity(tkey_get(key, slot)); }

 private:
  void require_same_shape(const SuperTensorT& o) const {
    if (mn_ != o.mn_ || sig_ != o.sig_)
      throw std::invalid_argument("SuperTensorT: shape mismatch");
  }
  static Scalar negate(const Scalar& v) { return -v; }

  Dims mn_;
  Signature sig_;
  std::unordered_map<TKey, Scalar> comp_;
};

using SuperTensor = SuperTensorT<Rat>;
using LambdaTensor = SuperTensorT<LambdaLinear>;

/// Permutation of slot positions: perm[old] = new. Validated on use.
struct SlotPermutation {
  std::vector<int> to_new;

  static SlotPermutation identity(int k) {
    SlotPermutation p;
    p.to_new.resize(k);
    for (int i = 0; i < k; ++i) p.to_new[i] = i;
    return p;
  }
  /// Transposition of two positions.
  static SlotPermutation swap(int k, int a, int b) {
    SlotPermutation p = identity(k);
    std::swap(p.to_new[a], p.to_new[b]);
    return p;
  }
  /// Exchange of the slot pairs (2p, 2p+1) <-> (2q, 2q+1).
  static SlotPermutation swap_pairs(int k, int p, int q) {
    SlotPermutation r = identity(k);
    std::swap(r.to_new[2 * p], r.to_new[2 * q]);
    std::swap(r.to_new[2 * p + 1], r.to_new[2 * q + 1]);
    return r;
  }
  /// Full reversal of the f slot PAIRS of a (V (x) V*)^f signature.
  static SlotPermutation reverse_pairs(int factors) {
    SlotPermutation r;
    r.to_new.resize(2 * factors);
    for (int p = 0; p < factors; ++p) {
      int q = factors - 1 - p;
      r.to_new[2 * p] = 2 * q;
      r.to_new[2 * p + 1] = 2 * q + 1;
    }
    return r;
  }

  /// this composed after p (apply p first).
  SlotPermutation after(const SlotPermutation& p) const {
    SlotPermutation r;
    r.to_new.resize(to_new.size());
    for (size_t i = 0; i < to_new.size(); ++i) r.to_new[i] = to_new[p.to_new[i]];
    return r;
  }

  bool valid_for(int k) const {
    if (static_cast<int>(to_new.size()) != k) return false;
    std::vector<bool> seen(k, false);
    for (int v : to_new) {
      if (v < 0 || v >= k || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }
};

/// The single sign primitive: the Koszul sign of one adjacent transposition is
/// (-1)^(p1*p2). Arbitrary permutations are realized as compositions of
/// adjacent transpositions; this routine bubble-sorts the slot arrangement and
/// accumulates the sign for one component's index parities.
/// `arrangement[pos]` holds the original slot now sitting at `pos`;
/// `par[orig]` is the parity of the object from original slot `orig`.
inline int koszul_sort_sign(std::vector<int>& arrangement, const std::vector<int>& target_pos,
                            const std::vector<int>& par) {
  int sign = 1;
  const int k = static_cast<int>(arrangement.size());
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i + 1 < k; ++i) {
      if (target_pos[arrangement[i]] > target_pos[arrangement[i + 1]]) {
        if (par[arrangement[i]] && par[arrangement[i + 1]]) sign = -sign;
        std::swap(arrangement[i], arrangement[i + 1]);
        moved = true;
      }
    }
  }
  return sign;
}

/// Component permutation with the Koszul sign. Functorial:
/// permute(permute(T,p),q) == permute(T, q.after(p)), signs included.
template <typename Scalar>
SuperTensorT<Scalar> permute_signed(const SuperTensorT<Scalar>& t, const SlotPermutation& p) {
  const int k = t.slots();
  if (!p.valid_for(k)) throw std::invalid_argument("permute_signed: invalid permutation");
  Signature new_sig(k);
  for (int i = 0; i < k; ++i) new_sig[p.to_new[i]] = t.signature()[i];
  SuperTensorT<Scalar> r(t.mn(), new_sig);
  std::vector<int> par(k), arrangement(k);
  for (const auto& [key, v] : t.components()) {
    for (int s = 0; s < k; ++s) {
      par[s] = t.mn().parity(tkey_get(key, s));
      arrangement[s] = s;
    }
    int sign = koszul_sort_sign(arrangement, p.to_new, par);
    TKey nk = 0;
    for (int s = 0; s < k; ++s) nk = tkey_set(nk, p.to_new[s], tkey_get(key, s));
    Scalar nv = v;
    if (sign < 0) nv = -nv;
    r.add(nk, nv);
  }
  return r;
}

/// Partial supertrace over slots a (one of V/V*) and b (the other type).
/// The contracted slots are brought adjacent with Koszul signs; a (V, V*)
/// ordering then contributes the supertrace sign (-1)^|i|, a (V*, V) ordering
/// is the plain evaluation pairing.
template <typename Scalar>
SuperTensorT<Scalar> contract_str(const SuperTensorT<Scalar>& t, int a, int b) {
  const int k = t.slots();
  if (a < 0 || b < 0 || a >= k || b >= k || a == b)
    throw std::invalid_argument("contract_str: bad slot positions");
  if (t.signature()[a] == t.signature()[b])
    throw std::invalid_argument("contract_str: slots must be one V and one V*");
  const int lo = std::min(a, b), hi = std::max(a, b);
  const bool v_first = (t.signature()[lo] == Slot::V);

  Signature new_sig;
  for (int s = 0; s < k; ++s)
    if (s != a && s != b) new_sig.push_back(t.signature()[s]);
  SuperTensorT<Scalar> r(t.mn(), new_sig);

  for (const auto& [key, v] : t.components()) {
    const int ia = tkey_get(key, lo), ib = tkey_get(key, hi);
    if (ia != ib) continue;
    // Move slot `lo` rightwards to position hi-1: it passes every slot
    // strictly between lo and hi.
    int between = 0;
    for (int s = lo + 1; s < hi; ++s) between += t.mn().parity(tkey_get(key, s));
    int sign = (t.mn().parity(ia) && (between & 1)) ? -1 : 1;
    if (v_first && t.mn().parity(ia)) sign = -sign;
    TKey nk = 0;
    int ns = 0;
    for (int s = 0; s < k; ++s) {
      if (s == a || s == b) continue;
      nk = tkey_set(nk, ns++, tkey_get(key, s));
    }
    Scalar nv = v;
    if (sign < 0) nv = -nv;
    r.add(nk, nv);
  }
  return r;
}

/// Tensor product: concatenated signatures, componentwise products (scalars
/// are even, so no signs arise here).
template <typename Scalar>
SuperTensorT<Scalar> outer(const SuperTensorT<Scalar>& x, const SuperTensorT<Scalar>& y) {
  if (x.mn() != y.mn()) throw std::invalid_argument("outer: mismatched (m,n)");
  Signature sig = x.signature();
  sig.insert(sig.end(), y.signature().begin(), y.signature().end());
  SuperTensorT<Scalar> r(x.mn(), sig);
  const int kx = x.slots();
  for (const auto& [ka, va] : x.components())
    for (const auto& [kb, vb] : y.components()) r.add(ka | (kb << (4 * kx)), va * vb);
  return r;
}

/// The scalar extracted from a 0-slot tensor.
template <typename Scalar>
Scalar scalar_of(const SuperTensorT<Scalar>& t) {
  if (t.slots() != 0) throw std::invalid_argument("scalar_of: tensor has open slots");
  return t.at(0);
}

}  // namespace slmn
