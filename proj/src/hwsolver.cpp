#include "slmn/hwsolver.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_map>

namespace slmn {

namespace {

SuperTensor adjoint_act_homogeneous(Dims mn, const SuperMatrix& z, int zpar,
                                    const SuperTensor& t) {
  const int N = mn.N();
  // Index the entries of z by column (for V slots) and by row (for V* slots).
  std::vector<std::vector<std::pair<int, Rat>>> by_col(N), by_row(N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (z(i, j) == 0) continue;
      by_col[j].push_back({i, z(i, j)});
      by_row[i].push_back({j, z(i, j)});
    }

  SuperTensor r(mn, t.signature());
  const int k = t.slots();
  for (const auto& [key, v] : t.components()) {
    int prefix = 0;
    for (int s = 0; s < k; ++s) {
      const int idx = tkey_get(key, s);
      const int sign0 = (zpar && (prefix & 1)) ? -1 : 1;
      if (t.signature()[s] == Slot::V) {
        for (const auto& [row, zv] : by_col[idx]) {
          Rat c = zv * v;
          if (sign0 < 0) c = -c;
          r.add(tkey_set(key, s, row), c);
        }
      } else {
        // Z . e^idx = -(-1)^{|Z||idx|} sum_c Z(idx, c) e^c
        int sg = -sign0 * ((zpar && mn.parity(idx)) ? -1 : 1);
        for (const auto& [col, zv] : by_row[idx]) {
          Rat c = zv * v;
          if (sg < 0) c = -c;
          r.add(tkey_set(key, s, col), c);
        }
      }
      prefix += mn.parity(idx);
    }
  }
  return r;
}

}  // namespace

SuperTensor adjoint_act(Dims mn, const SuperMatrix& z, const SuperTensor& t) {
  int p = matrix_parity(mn, z);
  if (p >= 0) return adjoint_act_homogeneous(mn, z, p, t);
  SuperTensor r = adjoint_act_homogeneous(mn, even_part(mn, z), 0, t);
  r += adjoint_act_homogeneous(mn, odd_part(mn, z), 1, t);
  return r;
}

SuperTensor casimir_apply(const CasimirTensor& cas, const SlBasis& basis, const SuperTensor& t) {
  const Dims mn = basis.mn;
  SuperTensor out(mn, t.signature());
  const int d = basis.dim();
  for (int c = 0; c < d; ++c) {
    bool used = false;
    for (int a = 0; a < d; ++a)
      if (cas.pair_coeffs(a, c) != 0) {
        used = true;
        break;
      }
    if (!used) continue;
    SuperTensor tc = adjoint_act_homogeneous(mn, basis[c].mat, basis[c].parity, t);
    if (tc.is_zero()) continue;
    for (int a = 0; a < d; ++a) {
      const Rat& w = cas.pair_coeffs(a, c);
      if (w == 0) continue;
      SuperTensor ta = adjoint_act_homogeneous(mn, basis[a].mat, basis[a].parity, tc);
      ta.scale(w);
      out += ta;
    }
  }
  return out;
}

SuperTensor casimir_apply(Dims mn, const SuperTensor& t) {
  return casimir_apply(casimir_tensor(mn), sl_basis(mn), t);
}

// ---------------------------------------------------------------------------
// Tuple-coordinate weight spaces of tensor powers of the adjoint module.
// ---------------------------------------------------------------------------

namespace {

using IntWeight = std::vector<int>;

struct PowerSpaces {
  Dims mn;
  int k = 0;
  int d = 0;  // dim g

  std::vector<IntWeight> elem_wt;
  std::vector<int> elem_par;
  std::map<IntWeight, std::vector<int>> elems_by_weight;

  struct Space {
    IntWeight wt;
    std::vector<std::array<int, 3>> tuples;
    std::unordered_map<long, int> pos;  // encoded tuple -> index
  };
  std::vector<Space> spaces;
  std::map<IntWeight, int> space_idx;

  long encode(const std::array<int, 3>& t) const {
    long e = 0;
    for (int s = 0; s < k; ++s) e = e * d + t[s];
    return e;
  }

  const Space* space_of(const IntWeight& w) const {
    auto it = space_idx.find(w);
    return it == space_idx.end() ? nullptr : &spaces[it->second];
  }
};

PowerSpaces build_power_spaces(const SlBasis& basis, int k) {
  PowerSpaces ps;
  ps.mn = basis.mn;
  ps.k = k;
  ps.d = basis.dim();
  for (int a = 0; a < ps.d; ++a) {
    ps.elem_wt.push_back(basis[a].wt);
    ps.elem_par.push_back(basis[a].parity);
    ps.elems_by_weight[basis[a].wt].push_back(a);
  }
  const int N = basis.mn.N();
  std::array<int, 3> tup{0, 0, 0};
  IntWeight w(N, 0);
  std::map<IntWeight, std::vector<std::array<int, 3>>> grouped;
  std::vector<int> idx(k, 0);
  while (true) {
    std::fill(w.begin(), w.end(), 0);
    for (int s = 0; s < k; ++s) {
      tup[s] = idx[s];
      for (int i = 0; i < N; ++i) w[i] += ps.elem_wt[idx[s]][i];
    }
    grouped[w].push_back(tup);
    int s = k - 1;
    while (s >= 0 && ++idx[s] == ps.d) idx[s--] = 0;
    if (s < 0) break;
  }
  for (auto& [wt, tuples] : grouped) {
    PowerSpaces::Space sp;
    sp.wt = wt;
    sp.tuples = std::move(tuples);
    for (size_t i = 0; i < sp.tuples.size(); ++i)
      sp.pos[ps.encode(sp.tuples[i])] = static_cast<int>(i);
    ps.space_idx[wt] = static_cast<int>(ps.spaces.size());
    ps.spaces.push_back(std::move(sp));
  }
  return ps;
}

/// Sparse columns of ad(b_z) in basis coordinates.
using AdCols = std::vector<std::vector<std::pair<int, Rat>>>;

AdCols sparse_ad(const SlBasis& basis, int z) {
  AdCols cols(basis.dim());
  for (int a = 0; a < basis.dim(); ++a) {
    SuperMatrix img = bracket(basis.mn, basis[z].mat, basis[a].mat);
    if (img.isZero(0)) continue;
    RatVec c = basis.coords(img);
    for (int r = 0; r < basis.dim(); ++r)
      if (c[r] != 0) cols[a].push_back({r, c[r]});
  }
  return cols;
}

IntWeight add_wt(const IntWeight& a, const IntWeight& b) {
  IntWeight r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

/// Matrix of the tuple-level action of raising element z from `src` into its
/// target space (Leibniz rule with Koszul prefix signs).
RatMat raising_matrix(const PowerSpaces& ps, const AdCols& ad, int zpar,
                      const PowerSpaces::Space& src, const PowerSpaces::Space& dst) {
  RatMat m(static_cast<Eigen::Index>(dst.tuples.size()),
           static_cast<Eigen::Index>(src.tuples.size()));
  m.setConstant(Rat(0));
  for (size_t c = 0; c < src.tuples.size(); ++c) {
    std::array<int, 3> tup = src.tuples[c];
    int prefix = 0;
    for (int s = 0; s < ps.k; ++s) {
      const int sign0 = (zpar && (prefix & 1)) ? -1 : 1;
      for (const auto& [repl, coeff] : ad[tup[s]]) {
        std::array<int, 3> out = tup;
        out[s] = repl;
        auto it = dst.pos.find(ps.encode(out));
        if (it == dst.pos.end())
          throw std::logic_error("raising_matrix: image tuple missing from target space");
        Rat v = coeff;
        if (sign0 < 0) v = -v;
        m(it->second, static_cast<Eigen::Index>(c)) += v;
      }
      prefix += ps.elem_par[tup[s]];
    }
  }
  return m;
}

/// Kernel of the stacked raising conditions restricted to the column span of
/// P over the tuple space `src`. Returns combination coefficients.
RatMat hwv_kernel(const SlBasis& basis, const PowerSpaces& ps, const PowerSpaces::Space& src,
                  const RatMat& p, const std::vector<int>& raising, int exact_threshold = 1 << 30) {
  long rows = 0;
  std::vector<RatMat> blocks;
  for (int z : raising) {
    IntWeight target_wt = add_wt(src.wt, basis[z].wt);
    const PowerSpaces::Space* dst = ps.space_of(target_wt);
    if (dst == nullptr) continue;  // target weight unpopulated: condition vacuous
    AdCols ad = sparse_ad(basis, z);
    RatMat r = raising_matrix(ps, ad, basis[z].parity, src, *dst);
    blocks.push_back(r * p);
    rows += blocks.back().rows();
  }
  if (blocks.empty()) {
    RatMat id(p.cols(), p.cols());
    id.setConstant(Rat(0));
    for (Eigen::Index i = 0; i < p.cols(); ++i) id(i, i) = 1;
    return id;
  }
  RatMat stacked(rows, p.cols());
  long at = 0;
  for (const auto& b : blocks) {
    stacked.block(at, 0, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  if (stacked.cols() <= exact_threshold) return kernel_exact(stacked);
  return certified_kernel(stacked).kernel;
}

RatMat identity_rat(Eigen::Index n) {
  RatMat id(n, n);
  id.setConstant(Rat(0));
  for (Eigen::Index i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

SuperTensor tuple_tensor(const SlBasis& basis, const std::array<int, 3>& tup, int k) {
  SuperTensor t = matrix_to_tensor(basis.mn, basis[tup[0]].mat);
  for (int s = 1; s < k; ++s) t = outer(t, matrix_to_tensor(basis.mn, basis[tup[s]].mat));
  return t;
}

IntWeight weight_to_int(const Weight& w) {
  IntWeight r(w.mn().N());
  for (int i = 0; i < w.mn().N(); ++i) {
    if (!is_integer(w[i]))
      throw std::invalid_argument("weight_to_int: weight is not integral");
    r[i] = static_cast<int>(w[i].get_num().get_si());
  }
  return r;
}

Weight int_to_weight(Dims mn, const IntWeight& w) {
  RatVec c(mn.N());
  for (int i = 0; i < mn.N(); ++i) c[i] = w[i];
  return Weight(mn, std::move(c));
}

SubspaceBasis hwv_impl(Dims mn, int k, const Weight& lam, bool full_nplus) {
  if (k < 1 || k > 3) throw std::invalid_argument("highest_weight_vectors: k in {1,2,3}");
  SlBasis basis = sl_basis(mn);
  PowerSpaces ps = build_power_spaces(basis, k);
  SubspaceBasis out;
  out.mn = mn;
  out.signature = pair_signature(k);
  const PowerSpaces::Space* src = ps.space_of(weight_to_int(lam));
  if (src == nullptr) return out;
  std::vector<int> raising =
      full_nplus ? basis.positive_raising_indices() : basis.simple_raising_indices();
  RatMat kern = hwv_kernel(basis, ps, *src, identity_rat(src->tuples.size()), raising);
  for (Eigen::Index col = 0; col < kern.cols(); ++col) {
    SuperTensor v(mn, pair_signature(k));
    for (Eigen::Index r = 0; r < kern.rows(); ++r) {
      if (kern(r, col) == 0) continue;
      SuperTensor t = tuple_tensor(basis, src->tuples[r], k);
      t.scale(kern(r, col));
      v += t;
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace

SubspaceBasis highest_weight_vectors(Dims mn, int k, const Weight& lam) {
  return hwv_impl(mn, k, lam, false);
}

SubspaceBasis highest_weight_vectors_full_nplus(Dims mn, int k, const Weight& lam) {
  return hwv_impl(mn, k, lam, true);
}

// ---------------------------------------------------------------------------
// Tensor-square scan
// ---------------------------------------------------------------------------

namespace {

/// Columns: (anti)symmetrized pair vectors in tuple coordinates of `src`.
RatMat pair_part_basis(const PowerSpaces& ps, const PowerSpaces::Space& src, bool symmetric) {
  std::vector<std::pair<int, int>> gens;
  for (size_t i = 0; i < src.tuples.size(); ++i) {
    int a = src.tuples[i][0], c = src.tuples[i][1];
    if (a < c) gens.push_back({a, c});
    if (a == c) {
      bool odd = ps.elem_par[a] == 1;
      if ((symmetric && !odd) || (!symmetric && odd)) gens.push_back({a, a});
    }
  }
  RatMat p(static_cast<Eigen::Index>(src.tuples.size()), static_cast<Eigen::Index>(gens.size()));
  p.setConstant(Rat(0));
  for (size_t g = 0; g < gens.size(); ++g) {
    auto [a, c] = gens[g];
    int ia = src.pos.at(ps.encode({a, c, 0}));
    p(ia, static_cast<Eigen::Index>(g)) += 1;
    if (a != c) {
      int ic = src.pos.at(ps.encode({c, a, 0}));
      int koszul = (ps.elem_par[a] && ps.elem_par[c]) ? -1 : 1;
      int sgn = symmetric ? koszul : -koszul;
      p(ic, static_cast<Eigen::Index>(g)) += Rat(sgn);
    }
  }
  return p;
}

}  // namespace

WeightSpaceReport verify_tensor_square(Dims mn) {
  if (mn.t() <= 2)
    throw std::domain_error(
        "verify_tensor_square: m-n > 2 required (mirrored cases are not relabeled)");
  SlBasis basis = sl_basis(mn);
  PowerSpaces ps = build_power_spaces(basis, 2);
  std::vector<int> raising = basis.simple_raising_indices();

  WeightSpaceReport rep;
  rep.mn = mn;
  for (const auto& sp : ps.spaces) {
    for (bool symmetric : {true, false}) {
      RatMat p = pair_part_basis(ps, sp, symmetric);
      if (p.cols() == 0) continue;
      RatMat kern = hwv_kernel(basis, ps, sp, p, raising);
      WeightSpaceEntry e{int_to_weight(mn, sp.wt), static_cast<int>(p.cols()),
                         static_cast<int>(kern.cols())};
      (symmetric ? rep.symmetric : rep.antisymmetric).push_back(std::move(e));
    }
  }
  return rep;
}

std::vector<WeightSpaceEntry> WeightSpaceReport::nonzero_symmetric() const {
  std::vector<WeightSpaceEntry> r;
  for (const auto& e : symmetric)
    if (e.hwv_dim > 0) r.push_back(e);
  return r;
}

std::vector<WeightSpaceEntry> WeightSpaceReport::nonzero_antisymmetric() const {
  std::vector<WeightSpaceEntry> r;
  for (const auto& e : antisymmetric)
    if (e.hwv_dim > 0) r.push_back(e);
  return r;
}

std::string weight_space_report_json(const WeightSpaceReport& r) {
  using nlohmann::ordered_json;
  auto part = [](const std::vector<WeightSpaceEntry>& es) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : es) {
      ordered_json w = ordered_json::array();
      for (int i = 0; i < e.wt.mn().N(); ++i) w.push_back(rat_str(e.wt[i]));
      arr.push_back({{"weight", w}, {"weight_dim", e.weight_dim}, {"hwv_dim", e.hwv_dim}});
    }
    return arr;
  };
  ordered_json j;
  j["m"] = r.mn.m;
  j["n"] = r.mn.n;
  j["symmetric"] = part(r.symmetric);
  j["antisymmetric"] = part(r.antisymmetric);
  return j.dump();
}

Theorem1Weights theorem1_weights(Dims mn) {
  if (mn.m == 1) throw std::domain_error("theorem1_weights: m = 1 needs the mirrored labels");
  const int N = mn.N();
  auto make = [&](std::initializer_list<std::pair<int, int>> terms) {
    RatVec c = RatVec::Zero(N);
    for (auto [pos, val] : terms) c[pos] += val;
    return Weight(mn, std::move(c));
  };
  // delta_{n-1} means eps_m when n = 1.
  const int d_n = N - 1;
  const int d_n1 = (mn.n == 1) ? mn.m - 1 : N - 2;
  Theorem1Weights w;
  w.symmetric = {make({{0, 2}, {d_n1, -1}, {d_n, -1}}),
                 make({{0, 1}, {1, 1}, {d_n, -2}}),
                 make({{0, 1}, {d_n, -1}}),
                 Weight(mn)};
  w.antisymmetric = {make({{0, 2}, {d_n, -2}}),
                     make({{0, 1}, {1, 1}, {d_n1, -1}, {d_n, -1}}),
                     make({{0, 1}, {d_n, -1}})};
  return w;
}

Lemma3Weights lemma3_weights(Dims mn) {
  RootSystem rs = root_system(mn);
  Weight top = Weight::root(mn, 0, mn.N() - 1);  // eps_1 - delta_n
  std::vector<Weight> candidates;
  auto consider = [&](const Weight& w) {
    if (!is_dominant_regular(w)) return;
    for (const auto& c : candidates)
      if (c == w) return;
    candidates.push_back(w);
  };
  consider(top + Weight(mn));
  auto all_roots = [&]() {
    std::vector<Weight> r;
    for (const auto& a : rs.positive_even) {
      r.push_back(a);
      r.push_back(-a);
    }
    for (const auto& a : rs.positive_odd) {
      r.push_back(a);
      r.push_back(-a);
    }
    return r;
  }();
  for (const auto& a : all_roots) consider(top + a);

  Theorem1Weights t1 = theorem1_weights(mn);
  std::vector<Weight> allowed = t1.symmetric;
  for (const auto& w : t1.antisymmetric) {
    bool dup = false;
    for (const auto& x : allowed) dup = dup || x == w;
    if (!dup) allowed.push_back(w);
  }
  Lemma3Weights out;
  for (const auto& c : candidates) {
    bool is_allowed = false;
    for (const auto& a : allowed) is_allowed = is_allowed || a == c;
    (is_allowed ? out.allowed : out.excluded).push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// beta_3 certification
// ---------------------------------------------------------------------------

namespace {

struct PairProjectors {
  // Per weight space of g (x) g: the off-Cartan projector in tuple
  // coordinates, and a tuple-coordinate basis of I_2.
  std::vector<RatMat> offcartan;   // indexed like PowerSpaces::spaces
  std::vector<RatMat> i2_basis;
};

PairProjectors build_pair_projectors(const SlBasis& basis, const PowerSpaces& p2) {
  const Dims mn = basis.mn;
  PairProjectors out;
  out.offcartan.resize(p2.spaces.size());
  out.i2_basis.resize(p2.spaces.size());
  for (size_t si = 0; si < p2.spaces.size(); ++si) {
    const auto& sp = p2.spaces[si];
    const int T = static_cast<int>(sp.tuples.size());
    // Component coordinates of the tuple basis and of the projected tuples.
    std::map<TKey, int> row_of;
    std::vector<SuperTensor> cols_t, proj_t;
    for (int c = 0; c < T; ++c) {
      SuperTensor t = tuple_tensor(basis, sp.tuples[c], 2);
      SuperTensor pr = project_offcartan(t);
      for (const auto& [k, v] : t.components())
        if (!row_of.count(k)) row_of[k] = static_cast<int>(row_of.size());
      for (const auto& [k, v] : pr.components())
        if (!row_of.count(k)) row_of[k] = static_cast<int>(row_of.size());
      cols_t.push_back(std::move(t));
      proj_t.push_back(std::move(pr));
    }
    const int R = static_cast<int>(row_of.size());
    RatMat cmat(R, T), vmat(R, T);
    cmat.setConstant(Rat(0));
    vmat.setConstant(Rat(0));
    for (int c = 0; c < T; ++c) {
      for (const auto& [k, v] : cols_t[c].components()) cmat(row_of[k], c) = v;
      for (const auto& [k, v] : proj_t[c].components()) vmat(row_of[k], c) = v;
    }
    auto x = solve_exact(cmat, vmat);
    if (!x)
      throw std::logic_error("beta3: off-Cartan image left the pair weight space");
    out.offcartan[si] = std::move(*x);
    // I_2 = ker(1 - offcartan) = the off-Cartan projector's image... the
    // complement basis we need is ker(cartan projector) = ker(I - offcartan).
    RatMat b = identity_rat(T) - out.offcartan[si];
    out.i2_basis[si] = kernel_exact(b);
  }
  return out;
}

struct SpaceOutcome {
  int t_dim = 0;
  int beta_dim = 0;
  int i3_rank = 0;
  bool sum_ok = false;
  bool direct_ok = false;
  RatMat beta_basis;  // tuple coords
};

}  // namespace

Beta3Report beta3_check(Dims mn, const Beta3Options& opts) {
  if (mn.t() <= 2) throw std::domain_error("beta3_check: m-n > 2 required");
  SlBasis basis = sl_basis(mn);
  PowerSpaces p2 = build_power_spaces(basis, 2);
  PowerSpaces p3 = build_power_spaces(basis, 3);

  Beta3Report rep;
  rep.mn = mn;
  rep.dim_g3 = static_cast<long>(basis.dim()) * basis.dim() * basis.dim();

  // Resource guard: the per-weight systems are (2T x T) exact plus the same
  // again mod p; estimate before allocating anything big.
  {
    long bytes = 0;
    for (const auto& sp : p3.spaces) {
      long T = static_cast<long>(sp.tuples.size());
      bytes += 2 * T * T * (48 + 8);  // stacked exact + modular copies
    }
    rep.estimated_bytes = bytes;
    if (bytes > opts.mem_cap_mb * 1024L * 1024L)
      throw ResourceCapExceeded("beta3_check: estimated " + std::to_string(bytes / (1024 * 1024)) +
                                " MiB exceeds cap " + std::to_string(opts.mem_cap_mb) + " MiB");
  }

  PairProjectors pp = build_pair_projectors(basis, p2);

  const int exact_threshold = opts.force_exact ? (1 << 30) : 96;
  std::vector<SpaceOutcome> outcomes(p3.spaces.size());

  auto process_space = [&](size_t si) {
    const auto& sp = p3.spaces[si];
    const int T = static_cast<int>(sp.tuples.size());
    SpaceOutcome& oc = outcomes[si];
    oc.t_dim = T;

    // Stacked conditions: (offC (x) id) and (id (x) offC) vanish.
    RatMat m(2 * T, T);
    m.setConstant(Rat(0));
    for (int c = 0; c < T; ++c) {
      const auto& tup = sp.tuples[c];
      {
        IntWeight w = add_wt(basis[tup[0]].wt, basis[tup[1]].wt);
        int s2 = p2.space_idx.at(w);
        const auto& pair_sp = p2.spaces[s2];
        int col = pair_sp.pos.at(p2.encode({tup[0], tup[1], 0}));
        const RatMat& o = pp.offcartan[s2];
        for (int r = 0; r < o.rows(); ++r) {
          if (o(r, col) == 0) continue;
          const auto& pr = pair_sp.tuples[r];
          int row = sp.pos.at(p3.encode({pr[0], pr[1], tup[2]}));
          m(row, c) += o(r, col);
        }
      }
      {
        IntWeight w = add_wt(basis[tup[1]].wt, basis[tup[2]].wt);
        int s2 = p2.space_idx.at(w);
        const auto& pair_sp = p2.spaces[s2];
        int col = pair_sp.pos.at(p2.encode({tup[1], tup[2], 0}));
        const RatMat& o = pp.offcartan[s2];
        for (int r = 0; r < o.rows(); ++r) {
          if (o(r, col) == 0) continue;
          const auto& pr = pair_sp.tuples[r];
          int row = sp.pos.at(p3.encode({tup[0], pr[0], pr[1]}));
          m(T + row, c) += o(r, col);
        }
      }
    }
    CertifiedKernel kern = certified_kernel(m, exact_threshold);
    oc.beta_dim = static_cast<int>(kern.kernel.cols());
    oc.beta_basis = std::move(kern.kernel);

    // I_3 generators in tuple coordinates.
    std::vector<std::vector<Rat>> gens;
    auto add_gen = [&](std::vector<Rat> g) { gens.push_back(std::move(g)); };
    for (size_t s2 = 0; s2 < p2.spaces.size(); ++s2) {
      const RatMat& i2 = pp.i2_basis[s2];
      if (i2.cols() == 0) continue;
      const auto& pair_sp = p2.spaces[s2];
      IntWeight rest(sp.wt);
      for (size_t i = 0; i < rest.size(); ++i) rest[i] -= pair_sp.wt[i];
      auto it = p2.elems_by_weight.find(rest);
      if (it == p2.elems_by_weight.end()) continue;
      for (int c : it->second) {
        for (Eigen::Index col = 0; col < i2.cols(); ++col) {
          std::vector<Rat> g(T, Rat(0));
          std::vector<Rat> h(T, Rat(0));
          for (int r = 0; r < i2.rows(); ++r) {
            if (i2(r, col) == 0) continue;
            const auto& pr = pair_sp.tuples[r];
            g[sp.pos.at(p3.encode({pr[0], pr[1], c}))] += i2(r, col);
            h[sp.pos.at(p3.encode({c, pr[0], pr[1]}))] += i2(r, col);
          }
          add_gen(std::move(g));
          add_gen(std::move(h));
        }
      }
    }
    RatMat gmat(T, static_cast<Eigen::Index>(gens.size()));
    for (size_t c = 0; c < gens.size(); ++c)
      for (int r = 0; r < T; ++r) gmat(r, static_cast<Eigen::Index>(c)) = gens[c][r];
    oc.i3_rank = gens.empty() ? 0 : certified_rank(gmat, exact_threshold);
    oc.sum_ok = (oc.beta_dim + oc.i3_rank == T);

    if (oc.beta_dim == 0) {
      oc.direct_ok = oc.sum_ok;
    } else {
      RatMat comb(T, oc.beta_basis.cols() + gmat.cols());
      comb.block(0, 0, T, oc.beta_basis.cols()) = oc.beta_basis;
      comb.block(0, oc.beta_basis.cols(), T, gmat.cols()) = gmat;
      oc.direct_ok = (certified_rank(comb, exact_threshold) == T) && oc.sum_ok;
    }
  };

  if (opts.jobs <= 1) {
    for (size_t si = 0; si < p3.spaces.size(); ++si) process_space(si);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < opts.jobs; ++w)
      pool.emplace_back([&] {
        for (size_t si = next.fetch_add(1); si < p3.spaces.size(); si = next.fetch_add(1))
          process_space(si);
      });
    for (auto& th : pool) th.join();
  }

  long total_dim = 0;
  bool all_ok = true;
  for (size_t si = 0; si < p3.spaces.size(); ++si) {
    const auto& oc = outcomes[si];
    total_dim += oc.t_dim;
    rep.dim_beta3 += oc.beta_dim;
    rep.dim_I3 += oc.i3_rank;
    all_ok = all_ok && oc.sum_ok && oc.direct_ok;
  }
  rep.direct_sum_ok = all_ok && (total_dim == rep.dim_g3);

  // Highest weight lines inside beta_3.
  std::vector<int> raising = basis.simple_raising_indices();
  for (size_t si = 0; si < p3.spaces.size(); ++si) {
    if (outcomes[si].beta_dim == 0) continue;
    const auto& sp = p3.spaces[si];
    RatMat kern = hwv_kernel(basis, p3, sp, outcomes[si].beta_basis, raising, 1 << 30);
    if (kern.cols() > 0) {
      rep.hwv_count += static_cast<int>(kern.cols());
      rep.hwv_weights.push_back(int_to_weight(mn, sp.wt));
    }
  }
  Weight l3 = lambda_k(3, mn);
  rep.hwv_is_lambda3 =
      rep.hwv_count == 1 && rep.hwv_weights.size() == 1 && rep.hwv_weights[0] == l3;
  rep.pass = rep.direct_sum_ok && rep.hwv_is_lambda3 &&
             (rep.dim_beta3 + rep.dim_I3 == rep.dim_g3);
  return rep;
}

std::string beta3_report_json(const Beta3Report& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["m"] = r.mn.m;
  j["n"] = r.mn.n;
  j["dim_g3"] = r.dim_g3;
  j["dim_beta3"] = r.dim_beta3;
  j["dim_I3"] = r.dim_I3;
  j["hwv_count"] = r.hwv_count;
  ordered_json ws = ordered_json::array();
  for (const auto& w : r.hwv_weights) {
    ordered_json cw = ordered_json::array();
    for (int i = 0; i < w.mn().N(); ++i) cw.push_back(rat_str(w[i]));
    ws.push_back(cw);
  }
  j["hwv_weights"] = ws;
  j["hwv_is_lambda3"] = r.hwv_is_lambda3;
  j["direct_sum_ok"] = r.direct_sum_ok;
  j["pass"] = r.pass;
  return j.dump();
}

}  // namespace slmn
