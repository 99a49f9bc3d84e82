#include "slmn/joseph.hpp"

#include <json.hpp>

#include <map>

#include "slmn/linalg.hpp"

namespace slmn {

LambdaTensor lift_lambda(const SuperTensor& t) {
  LambdaTensor r(t.mn(), t.signature());
  for (const auto& [k, v] : t.components()) r.set(k, LambdaLinear(v));
  return r;
}

FilteredElement generator(Dims mn, const SuperMatrix& x, const SuperMatrix& y) {
  if (mn.t() * mn.t() <= 4) throw std::domain_error("generator: |m-n| > 2 required");
  FilteredElement e(mn);
  SuperTensor xy = outer(matrix_to_tensor(mn, x), matrix_to_tensor(mn, y));
  e.deg2 = lift_lambda(xy - cartan_product(mn, x, y));
  SuperMatrix br = bracket(mn, x, y);
  e.deg1 = lift_lambda(matrix_to_tensor(mn, br));
  e.deg1.scale(rat(-1, 2));
  e.deg0 = LambdaLinear(Rat(0), -killing(mn, x, y));
  return e;
}

FilteredElement tau(const FilteredElement& e) {
  FilteredElement r(e.deg2.mn());
  r.deg2 = tau(e.deg2);
  r.deg1 = tau(e.deg1);
  r.deg0 = e.deg0;
  return r;
}

SuperTensor s_tensor(Dims mn, const SuperMatrix& t) {
  if (supertrace(mn, t) != 0) throw std::invalid_argument("s_tensor: T must be in sl(m|n)");
  const int N = mn.N();
  const Rat cinv = Rat(1) / Rat(mn.t());
  SuperTensor s(mn, pair_signature(3));
  auto key6 = [](int a, int b, int c, int d, int e, int f) {
    TKey k = 0;
    k = tkey_set(k, 0, a);
    k = tkey_set(k, 1, b);
    k = tkey_set(k, 2, c);
    k = tkey_set(k, 3, d);
    k = tkey_set(k, 4, e);
    k = tkey_set(k, 5, f);
    return k;
  };
  auto par = [&](int i) { return mn.parity(i); };
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (t(i, j) == 0) continue;
      const Rat& tv = t(i, j);
      for (int u = 0; u < N; ++u)
        for (int w = 0; w < N; ++w) {
          // 1: (-1)^{|d|} d^e_d d^c_f T^a_b  -> (i, j, w, u, u, w)
          s.add(key6(i, j, w, u, u, w), par(u) ? -tv : tv);
          // 2: -1/t d^c_d d^e_f T^a_b        -> (i, j, u, u, w, w)
          s.add(key6(i, j, u, u, w, w), -cinv * tv);
          // 3: -(-1)^{|b|+(|a|+|b|)(|c|+|d|)} d^e_b d^a_f T^c_d -> (u, w, i, j, w, u)
          {
            int e = par(w) + (par(u) + par(w)) * (par(i) + par(j));
            s.add(key6(u, w, i, j, w, u), (e & 1) ? tv : -tv);
          }
          // 4: +1/t d^a_b d^e_f T^c_d        -> (u, u, i, j, w, w)
          s.add(key6(u, u, i, j, w, w), cinv * tv);
          // 5: +(-1)^{|b|+(|a|+|b|)|c|+|d||e|} d^a_d d^e_b T^c_f -> (u, w, i, u, w, j)
          {
            int e = par(w) + (par(u) + par(w)) * par(i) + par(u) * par(w);
            s.add(key6(u, w, i, u, w, j), (e & 1) ? -tv : tv);
          }
          // 6: -1/t (-1)^{|d|+(|a|+|b|)(|c|+|d|)} d^a_d d^e_f T^c_b
          //    a = d = u, c = i, b = j, e = f = w -> (u, j, i, u, w, w)
          {
            int e = par(u) + (par(u) + par(j)) * (par(i) + par(u));
            s.add(key6(u, j, i, u, w, w), ((e & 1) ? cinv : -cinv) * tv);
          }
          // 7: -(-1)^{(|c|+|d|)|b|+|d|+|b||e|} d^c_b d^e_d T^a_f -> (i, u, u, w, w, j)
          {
            int e = (par(u) + par(w)) * par(u) + par(w) + par(u) * par(w);
            s.add(key6(i, u, u, w, w, j), (e & 1) ? tv : -tv);
          }
          // 8: +1/t (-1)^{|b|} d^c_b d^e_f T^a_d -> (i, u, u, j, w, w)
          s.add(key6(i, u, u, j, w, w), (par(u) ? -cinv : cinv) * tv);
        }
    }
  }
  return s;
}

namespace {

/// Cartan component (projection onto the Cartan summand) of the factor pair
/// (p, p+1) of a 3-factor tensor, checked slice by slice over the remaining
/// factor. The projectors are even morphisms, so slicing needs no signs.
template <typename Scalar>
bool cartan_on_factor_pair_is_zero(const SuperTensorT<Scalar>& t, int p) {
  if (t.slots() != 6) throw std::invalid_argument("cartan_on_factor_pair_is_zero: need 6 slots");
  const int s0 = 2 * p;           // first slot of the factor pair
  const int r0 = (p == 0) ? 4 : 0;  // slots of the spectator factor
  std::map<std::pair<int, int>, SuperTensorT<Scalar>> slices;
  for (const auto& [k, v] : t.components()) {
    auto rest = std::make_pair(tkey_get(k, r0), tkey_get(k, r0 + 1));
    auto it = slices.find(rest);
    if (it == slices.end())
      it = slices.emplace(rest, SuperTensorT<Scalar>(t.mn(), pair_signature(2))).first;
    TKey nk = 0;
    for (int s = 0; s < 4; ++s) nk = tkey_set(nk, s, tkey_get(k, s0 + s));
    it->second.add(nk, v);
  }
  for (const auto& [rest, slice] : slices) {
    auto sym = pair_sym(slice);
    auto b = upper_sym(sym - chi(sym));
    if (!b.is_zero()) return false;
  }
  return true;
}

/// X (x) Y -> [X, Y] on the factor pair (p, p+1): j == k glues to (i, l), and
/// l == i glues to (k, j) with the super sign. An even morphism on middle
/// factors, so no prefix signs.
template <typename Scalar>
SuperTensorT<Scalar> bracket_contract(const SuperTensorT<Scalar>& t, int p) {
  const int k = t.slots();
  Signature sig;
  for (int s = 0; s < k - 2; ++s) sig.push_back(s % 2 ? Slot::Vd : Slot::V);
  SuperTensorT<Scalar> r(t.mn(), sig);
  const int s0 = 2 * p;
  auto repack = [&](TKey key, int a, int b) {
    TKey nk = 0;
    int ns = 0;
    for (int s = 0; s < s0; ++s) nk = tkey_set(nk, ns++, tkey_get(key, s));
    nk = tkey_set(nk, ns++, a);
    nk = tkey_set(nk, ns++, b);
    for (int s = s0 + 4; s < k; ++s) nk = tkey_set(nk, ns++, tkey_get(key, s));
    return nk;
  };
  for (const auto& [key, v] : t.components()) {
    const int i = tkey_get(key, s0), j = tkey_get(key, s0 + 1);
    const int kk = tkey_get(key, s0 + 2), l = tkey_get(key, s0 + 3);
    if (j == kk) r.add(repack(key, i, l), v);
    if (l == i) {
      int e = (t.mn().parity(i) + t.mn().parity(j)) * (t.mn().parity(kk) + t.mn().parity(l));
      Scalar nv = v;
      if ((e & 1) == 0) nv = -nv;  // -(-1)^{|X||Y|} with even product sign
      r.add(repack(key, kk, j), nv);
    }
  }
  return r;
}

/// X (x) Y -> <X, Y> on the factor pair (p, p+1).
template <typename Scalar>
SuperTensorT<Scalar> killing_contract(const SuperTensorT<Scalar>& t, int p) {
  const int k = t.slots();
  Signature sig;
  for (int s = 0; s < k - 4; ++s) sig.push_back(s % 2 ? Slot::Vd : Slot::V);
  SuperTensorT<Scalar> r(t.mn(), sig);
  const int s0 = 2 * p;
  const Rat two_t = Rat(2 * t.mn().t());
  for (const auto& [key, v] : t.components()) {
    const int i = tkey_get(key, s0), j = tkey_get(key, s0 + 1);
    const int kk = tkey_get(key, s0 + 2), l = tkey_get(key, s0 + 3);
    if (j != kk || l != i) continue;
    TKey nk = 0;
    int ns = 0;
    for (int s = 0; s < s0; ++s) nk = tkey_set(nk, ns++, tkey_get(key, s));
    for (int s = s0 + 4; s < k; ++s) nk = tkey_set(nk, ns++, tkey_get(key, s));
    Scalar nv = v * (t.mn().parity(i) ? -two_t : two_t);
    r.add(nk, nv);
  }
  return r;
}

LambdaTensor scale_by_lambda(LambdaTensor t) {
  LambdaTensor r(t.mn(), t.signature());
  for (const auto& [k, v] : t.components()) r.set(k, v * LambdaLinear::lambda());
  return r;
}

}  // namespace

STensorChecks check_s_postconditions(const SuperTensor& s) {
  STensorChecks c;
  c.str_12 = contract_str(s, 0, 1).is_zero();
  c.str_34 = contract_str(s, 2, 3).is_zero();
  c.str_56 = contract_str(s, 4, 5).is_zero();
  auto swapped = permute_signed(s, SlotPermutation::swap_pairs(6, 0, 1));
  c.antisym_in_first_two_factors = (swapped + s).is_zero();
  c.cartan_12_zero = cartan_on_factor_pair_is_zero(s, 0);
  c.cartan_23_zero = cartan_on_factor_pair_is_zero(s, 1);
  return c;
}

FilteredElement reduce_pair(const LambdaTensor& f, ReducePair side) {
  if (f.slots() != 6) throw std::invalid_argument("reduce_pair: expects a 3-factor tensor");
  const Dims mn = f.mn();
  const int p = (side == ReducePair::Left) ? 0 : 1;
  if (!cartan_on_factor_pair_is_zero(f, p))
    throw std::domain_error("reduce_pair: Cartan component of the chosen pair is nonzero");

  // Substitute on the chosen pair: degree drops to a 2-factor word plus a
  // lambda-weighted 1-factor remainder.
  LambdaTensor two_factor = bracket_contract(f, p);
  two_factor.scale(rat(1, 2));
  LambdaTensor deg1 = scale_by_lambda(killing_contract(f, p));

  // The remaining degree-2 word must itself have no Cartan component.
  {
    auto sym = pair_sym(two_factor);
    auto b = upper_sym(sym - chi(sym));
    if (!b.is_zero())
      throw std::domain_error("reduce_pair: residual degree-2 Cartan content is nonzero");
  }
  LambdaTensor d1b = bracket_contract(two_factor, 0);
  d1b.scale(rat(1, 2));
  deg1 += d1b;
  LambdaLinear deg0 = kappa(two_factor) * LambdaLinear::lambda();

  FilteredElement out(mn);
  out.deg1 = std::move(deg1);
  out.deg0 = deg0;
  return out;
}

namespace {

/// deg1 == scalar * T, solved and verified entrywise.
std::optional<LambdaLinear> extract_multiple(const LambdaTensor& deg1, const SuperMatrix& t,
                                             Dims mn) {
  LambdaLinear scalar(Rat(0));
  bool found = false;
  for (int i = 0; i < mn.N() && !found; ++i)
    for (int j = 0; j < mn.N() && !found; ++j) {
      if (t(i, j) == 0) continue;
      TKey k = tkey_set(tkey_set(TKey(0), 0, i), 1, j);
      LambdaLinear v = deg1.at(k);
      scalar = LambdaLinear(v.a / t(i, j), v.b / t(i, j));
      found = true;
    }
  if (!found) return std::nullopt;
  LambdaTensor expect(mn, pair_signature(1));
  for (int i = 0; i < mn.N(); ++i)
    for (int j = 0; j < mn.N(); ++j)
      if (t(i, j) != 0) {
        TKey k = tkey_set(tkey_set(TKey(0), 0, i), 1, j);
        expect.set(k, scalar * LambdaLinear(t(i, j)));
      }
  if (expect != deg1) return std::nullopt;
  return scalar;
}

}  // namespace

LambdaCReport derive_lambda_c(Dims mn) {
  if (mn.t() <= 2) throw std::domain_error("derive_lambda_c: m-n > 2 required");
  SlBasis basis = sl_basis(mn);
  LambdaCReport rep;
  rep.mn = mn;
  rep.per_T_consistent = true;
  bool first = true;
  for (int a = 0; a < basis.dim(); ++a) {
    LambdaTensor s = lift_lambda(s_tensor(mn, basis[a].mat));
    FilteredElement left = reduce_pair(s, ReducePair::Left);
    FilteredElement right = reduce_pair(s, ReducePair::Right);
    if (!left.deg0.is_zero() || !right.deg0.is_zero())
      throw std::logic_error("derive_lambda_c: reductions produced a degree-0 remainder");
    auto ls = extract_multiple(left.deg1, basis[a].mat, mn);
    auto rs = extract_multiple(right.deg1, basis[a].mat, mn);
    if (!ls || !rs)
      throw std::logic_error("derive_lambda_c: reduction is not a multiple of T");
    if (!ls->is_constant())
      throw std::logic_error("derive_lambda_c: left reduction depends on lambda");
    if (rs->b == 0)
      throw std::logic_error(
          "derive_lambda_c: the two reductions are proportional for every lambda");
    Rat lam = (ls->a - rs->a) / rs->b;
    if (first) {
      rep.left_scalar = ls->a;
      rep.right_scalar = *rs;
      rep.lambda_c = lam;
      first = false;
    } else if (lam != rep.lambda_c || ls->a != rep.left_scalar || *rs != rep.right_scalar) {
      rep.per_T_consistent = false;
    }
  }
  Rat expected = -Rat(1) / Rat(8 * (mn.t() + 1));
  if (rep.lambda_c != expected)
    throw std::logic_error("derive_lambda_c: critical parameter != -1/(8(m-n+1))");
  return rep;
}

std::string lambda_c_report_json(const LambdaCReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["m"] = r.mn.m;
  j["n"] = r.mn.n;
  j["lambda_c"] = rat_str(r.lambda_c);
  j["left_scalar"] = rat_str(r.left_scalar);
  j["right_scalar"] = r.right_scalar.str();
  j["per_T_consistent"] = r.per_T_consistent;
  return j.dump();
}

bool tau_generator_identity(Dims mn) {
  SlBasis basis = sl_basis(mn);
  for (int a = 0; a < basis.dim(); ++a)
    for (int c = 0; c < basis.dim(); ++c) {
      FilteredElement g = generator(mn, basis[a].mat, basis[c].mat);
      FilteredElement tg = tau(g);
      FilteredElement h = generator(mn, basis[c].mat, basis[a].mat);
      int sign = (basis[a].parity && basis[c].parity) ? -1 : 1;
      h.deg2.scale(Rat(sign));
      h.deg1.scale(Rat(sign));
      h.deg0 = LambdaLinear(h.deg0.a * sign, h.deg0.b * sign);
      if (!(tg.deg2 == h.deg2 && tg.deg1 == h.deg1 && tg.deg0 == h.deg0)) return false;
    }
  return true;
}

namespace {

/// Coordinates of a filtered element: deg2 components, deg1 components, then
/// the two scalar coefficients. Row ids are shared across the batch.
struct FilteredCoords {
  std::map<std::pair<int, TKey>, int> rows;  // (part, key) -> row
  int row_of(int part, TKey k) {
    auto it = rows.find({part, k});
    if (it != rows.end()) return it->second;
    int id = static_cast<int>(rows.size());
    rows[{part, k}] = id;
    return id;
  }
};

}  // namespace

bool tau_span_stable(Dims mn) {
  SlBasis basis = sl_basis(mn);
  std::vector<FilteredElement> gens, taus;
  for (int a = 0; a < basis.dim(); ++a)
    for (int c = 0; c < basis.dim(); ++c) {
      FilteredElement g = generator(mn, basis[a].mat, basis[c].mat);
      taus.push_back(tau(g));
      gens.push_back(std::move(g));
    }
  FilteredCoords fc;
  auto touch = [&](const FilteredElement& e) {
    for (const auto& [k, v] : e.deg2.components()) fc.row_of(2, k);
    for (const auto& [k, v] : e.deg1.components()) fc.row_of(1, k);
    fc.row_of(0, 0);
    fc.row_of(0, 1);
  };
  for (const auto& e : gens) touch(e);
  for (const auto& e : taus) touch(e);
  const int rows = static_cast<int>(fc.rows.size());
  auto fill = [&](RatMat& m, const std::vector<FilteredElement>& es, int col0) {
    for (size_t i = 0; i < es.size(); ++i) {
      for (const auto& [k, v] : es[i].deg2.components()) {
        m(fc.row_of(2, k), col0 + static_cast<int>(i)) = v.a;
        if (v.b != 0) throw std::logic_error("tau_span_stable: generator deg2 has lambda part");
      }
      for (const auto& [k, v] : es[i].deg1.components())
        m(fc.row_of(1, k), col0 + static_cast<int>(i)) = v.a;
      m(fc.row_of(0, 0), col0 + static_cast<int>(i)) = es[i].deg0.a;
      m(fc.row_of(0, 1), col0 + static_cast<int>(i)) = es[i].deg0.b;
    }
  };
  const int g = static_cast<int>(gens.size());
  RatMat both(rows, 2 * g);
  both.setConstant(Rat(0));
  fill(both, gens, 0);
  fill(both, taus, g);
  int rank_g = rank_exact(both.block(0, 0, rows, g));
  int rank_both = rank_exact(both);
  return rank_g == rank_both;
}

bool generators_span_I2(Dims mn) {
  SlBasis basis = sl_basis(mn);
  const int d = basis.dim();
  std::map<TKey, int> row_of;
  std::vector<SuperTensor> deg2s, bparts;
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      SuperTensor xy = outer(matrix_to_tensor(mn, basis[a].mat), matrix_to_tensor(mn, basis[c].mat));
      SuperTensor off = project_offcartan(xy);
      SuperTensor bp = xy - off;  // the Cartan component
      for (const auto& [k, v] : off.components())
        if (!row_of.count(k)) row_of[k] = static_cast<int>(row_of.size());
      for (const auto& [k, v] : bp.components())
        if (!row_of.count(k)) row_of[k] = static_cast<int>(row_of.size());
      deg2s.push_back(std::move(off));
      bparts.push_back(std::move(bp));
    }
  const int rows = static_cast<int>(row_of.size());
  RatMat g2(rows, d * d), bm(rows, d * d);
  g2.setConstant(Rat(0));
  bm.setConstant(Rat(0));
  for (int c = 0; c < d * d; ++c) {
    for (const auto& [k, v] : deg2s[c].components()) g2(row_of[k], c) = v;
    for (const auto& [k, v] : bparts[c].components()) bm(row_of[k], c) = v;
  }
  int dim_i2 = rank_exact(g2);
  int dim_b = rank_exact(bm);
  return dim_i2 + dim_b == d * d;
}

}  // namespace slmn
