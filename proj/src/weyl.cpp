#include "slmn/weyl.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "slmn/tensorops.hpp"

namespace slmn {

namespace {

int xe_get(uint64_t deg, int e) { return static_cast<int>((deg >> (4 * e)) & 0xF); }

uint64_t xe_set(uint64_t deg, int e, int v) {
  if (v < 0 || v > 15) throw std::overflow_error("WeylOp: exponent out of range");
  return (deg & ~(uint64_t(0xF) << (4 * e))) | (uint64_t(v) << (4 * e));
}

long binom_long(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long factorial_long(int k) {
  long r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

/// Inversions between two ascending index blocks A then B: pairs a in A,
/// b in B with a > b (each contributes one odd transposition).
int block_inversions(uint32_t a, uint32_t b) {
  int inv = 0;
  while (b) {
    int bit = std::countr_zero(b);
    inv += std::popcount(a >> (bit + 1));
    b &= b - 1;
  }
  return inv;
}

struct OddOutcome {
  int sign;
  uint32_t xmask;
  uint32_t dmask;
};

/// Normal ordering of D^T xi^U using {d_s, x_t} = delta_st on odd pairs and
/// mutual anticommutation within each block.
void odd_shuffle(uint32_t t, uint32_t u, int sign, std::vector<OddOutcome>& out) {
  if (t == 0 || u == 0) {
    out.push_back({sign, u, t});
    return;
  }
  const int bit = 31 - std::countl_zero(t);
  const uint32_t mask = 1u << bit;
  const uint32_t trest = t ^ mask;
  if (u & mask) {
    int pos = std::popcount(u & (mask - 1));
    odd_shuffle(trest, u ^ mask, (pos & 1) ? -sign : sign, out);
  }
  size_t start = out.size();
  odd_shuffle(trest, u, (std::popcount(u) & 1) ? -sign : sign, out);
  for (size_t i = start; i < out.size(); ++i) out[i].dmask |= mask;
}

}  // namespace

WeylOp WeylOp::constant(Dims mn, const Rat& c) {
  WeylOp w(mn);
  w.add_term(WeylTerm{}, c);
  return w;
}

WeylOp WeylOp::x(Dims mn, int j) {
  if (j < 2 || j > mn.N()) throw std::invalid_argument("WeylOp::x: variable index out of range");
  WeylOp w(mn);
  WeylTerm t;
  if (j <= mn.m)
    t.xdeg = xe_set(0, j - 2, 1);
  else
    t.xodd = 1u << (j - mn.m - 1);
  w.add_term(t, 1);
  return w;
}

WeylOp WeylOp::d(Dims mn, int j) {
  if (j < 2 || j > mn.N()) throw std::invalid_argument("WeylOp::d: variable index out of range");
  WeylOp w(mn);
  WeylTerm t;
  if (j <= mn.m)
    t.ddeg = xe_set(0, j - 2, 1);
  else
    t.dodd = 1u << (j - mn.m - 1);
  w.add_term(t, 1);
  return w;
}

WeylOp WeylOp::euler(Dims mn) {
  WeylOp w(mn);
  for (int j = 2; j <= mn.N(); ++j) {
    WeylTerm t;
    if (j <= mn.m) {
      t.xdeg = xe_set(0, j - 2, 1);
      t.ddeg = xe_set(0, j - 2, 1);
    } else {
      t.xodd = 1u << (j - mn.m - 1);
      t.dodd = 1u << (j - mn.m - 1);
    }
    w.add_term(t, 1);
  }
  return w;
}

bool WeylOp::is_zero() const { return terms_.empty(); }

int WeylOp::parity() const {
  int p = -2;
  for (const auto& [t, c] : terms_) {
    int tp = (std::popcount(t.xodd) + std::popcount(t.dodd)) & 1;
    if (p == -2)
      p = tp;
    else if (p != tp)
      return -1;
  }
  return p == -2 ? 0 : p;
}

void WeylOp::add_term(const WeylTerm& t, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(t, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WeylOp& WeylOp::operator+=(const WeylOp& o) {
  for (const auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

WeylOp& WeylOp::operator-=(const WeylOp& o) {
  for (const auto& [t, c] : o.terms_) add_term(t, -c);
  return *this;
}

WeylOp WeylOp::operator-() const {
  WeylOp r(mn_);
  for (const auto& [t, c] : terms_) r.terms_.emplace(t, -c);
  return r;
}

WeylOp& WeylOp::scale(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

bool WeylOp::operator==(const WeylOp& o) const {
  WeylOp d = *this;
  d -= o;
  return d.is_zero();
}

Rat WeylOp::constant_coefficient() const {
  auto it = terms_.find(WeylTerm{});
  return it == terms_.end() ? Rat(0) : it->second;
}

bool WeylOp::is_polynomial() const {
  for (const auto& [t, c] : terms_)
    if (t.ddeg != 0 || t.dodd != 0) return false;
  return true;
}

std::string WeylOp::str() const {
  if (terms_.empty()) return "0";
  // Sort deterministically.
  std::vector<std::pair<WeylTerm, Rat>> ts(terms_.begin(), terms_.end());
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.xdeg, a.first.xodd, a.first.ddeg, a.first.dodd) <
           std::tie(b.first.xdeg, b.first.xodd, b.first.ddeg, b.first.dodd);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : ts) {
    Rat a = c;
    if (!first) os << (a < 0 ? " - " : " + ");
    if (first && a < 0) os << "-";
    if (a < 0) a = -a;
    first = false;
    std::vector<std::string> factors;
    auto mono = [&](const char* sym, int j, int e) {
      std::string f = std::string(sym) + std::to_string(j);
      if (e > 1) f += "^" + std::to_string(e);
      factors.push_back(f);
    };
    for (int e = 0; e < mn_.m - 1; ++e)
      if (xe_get(t.xdeg, e)) mono("x", e + 2, xe_get(t.xdeg, e));
    for (int o = 0; o < mn_.n; ++o)
      if (t.xodd & (1u << o)) mono("x", mn_.m + 1 + o, 1);
    for (int e = 0; e < mn_.m - 1; ++e)
      if (xe_get(t.ddeg, e)) mono("d", e + 2, xe_get(t.ddeg, e));
    for (int o = 0; o < mn_.n; ++o)
      if (t.dodd & (1u << o)) mono("d", mn_.m + 1 + o, 1);
    if (factors.empty()) {
      os << rat_str(a);
    } else {
      if (a != 1) os << rat_str(a) << "*";
      for (size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
  }
  return os.str();
}

WeylOp weyl_mul(const WeylOp& p, const WeylOp& q) {
  if (p.mn() != q.mn()) throw std::invalid_argument("weyl_mul: mismatched (m,n)");
  const Dims mn = p.mn();
  const int ne = mn.m - 1;
  WeylOp out(mn);

  std::vector<OddOutcome> odd;
  for (const auto& [t1, c1] : p.terms()) {
    for (const auto& [t2, c2] : q.terms()) {
      odd.clear();
      odd_shuffle(t1.dodd, t2.xodd, 1, odd);
      // Pre-filter the odd outcomes once per term pair.
      std::vector<std::tuple<int, uint32_t, uint32_t>> odd_terms;
      for (const auto& oc : odd) {
        if (t1.xodd & oc.xmask) continue;
        if (oc.dmask & t2.dodd) continue;
        int s = oc.sign;
        if (block_inversions(t1.xodd, oc.xmask) & 1) s = -s;
        if (block_inversions(oc.dmask, t2.dodd) & 1) s = -s;
        odd_terms.push_back({s, t1.xodd | oc.xmask, oc.dmask | t2.dodd});
      }
      if (odd_terms.empty()) continue;

      // Even shuffle d^b x^c = sum_k C(b,k) C(c,k) k! x^{c-k} d^{b-k}.
      Rat base = c1 * c2;
      std::vector<std::tuple<uint64_t, uint64_t, long>> evens{{t2.xdeg, t1.ddeg, 1L}};
      for (int e = 0; e < ne; ++e) {
        const int b = xe_get(t1.ddeg, e), c = xe_get(t2.xdeg, e);
        const int kmax = std::min(b, c);
        if (kmax == 0) continue;
        std::vector<std::tuple<uint64_t, uint64_t, long>> next;
        for (const auto& [xm, dm, coeff] : evens)
          for (int k = 0; k <= kmax; ++k) {
            long f = binom_long(b, k) * binom_long(c, k) * factorial_long(k);
            next.push_back({xe_set(xm, e, c - k), xe_set(dm, e, b - k), coeff * f});
          }
        evens = std::move(next);
      }

      for (const auto& [xm, dm, coeff] : evens) {
        WeylTerm t;
        for (int e = 0; e < ne; ++e) {
          t.xdeg = xe_set(t.xdeg, e, xe_get(t1.xdeg, e) + xe_get(xm, e));
          t.ddeg = xe_set(t.ddeg, e, xe_get(dm, e) + xe_get(t2.ddeg, e));
        }
        Rat v = base * Rat(coeff);
        for (const auto& [s, xo, dd] : odd_terms) {
          WeylTerm tt = t;
          tt.xodd = xo;
          tt.dodd = dd;
          out.add_term(tt, s < 0 ? Rat(-v) : v);
        }
      }
    }
  }
  return out;
}

WeylOp weyl_bracket(const WeylOp& p, const WeylOp& q) {
  int pp = p.parity(), pq = q.parity();
  if (pp < 0 || pq < 0) throw std::invalid_argument("weyl_bracket: inhomogeneous operand");
  WeylOp r = weyl_mul(p, q);
  WeylOp qp = weyl_mul(q, p);
  if (pp && pq)
    r += qp;
  else
    r -= qp;
  return r;
}

WeylOp act_on_poly(const WeylOp& op, const WeylOp& poly) {
  if (!poly.is_polynomial()) throw std::invalid_argument("act_on_poly: not a polynomial");
  WeylOp prod = weyl_mul(op, poly);
  WeylOp out(op.mn());
  for (const auto& [t, c] : prod.terms())
    if (t.ddeg == 0 && t.dodd == 0) out.add_term(t, c);
  return out;
}

// ---------------------------------------------------------------------------
// Realization
// ---------------------------------------------------------------------------

Realization::Realization(Dims mn, Rat mu) : mn_(mn), mu_(std::move(mu)), basis_(sl_basis(mn)) {
  if (mn.m < 2) throw std::invalid_argument("Realization: m >= 2 required");
  const int N = mn.N();
  images_.resize(basis_.dim(), WeylOp(mn));

  WeylOp mu_minus_e = WeylOp::constant(mn, mu_) - WeylOp::euler(mn);
  std::vector<WeylOp> lower(N, WeylOp(mn)), raise(N, WeylOp(mn));
  for (int j = 1; j < N; ++j) {
    lower[j] = WeylOp::x(mn, j + 1);                      // E_{j+1,1} -> x_{j+1}
    raise[j] = weyl_mul(mu_minus_e, WeylOp::d(mn, j + 1));  // E_{1,j+1} -> (mu-E) d_{j+1}
    images_[basis_.index_of_unit(j, 0)] = lower[j];
    images_[basis_.index_of_unit(0, j)] = raise[j];
  }
  // Zero-graded off-diagonal entries through one fixed bracket route.
  for (int k = 1; k < N; ++k)
    for (int l = 1; l < N; ++l) {
      if (k == l) continue;
      images_[basis_.index_of_unit(k, l)] = weyl_bracket(lower[k], raise[l]);
    }
  // Cartan elements: H = sum_j c_j (E_11 - (-1)^{|j|} E_jj) with
  // c_j = -(-1)^{|j|} h_j, realized through [E_{1j}, E_{j1}].
  for (int k = 0; k + 1 < N; ++k) {
    const SuperMatrix& h = basis_[basis_.index_of_cartan(k)].mat;
    WeylOp img(mn);
    for (int j = 1; j < N; ++j) {
      if (h(j, j) == 0) continue;
      Rat cj = -Rat(mn.sign(j)) * h(j, j);
      WeylOp br = weyl_bracket(raise[j], lower[j]);
      br.scale(cj);
      img += br;
    }
    images_[basis_.index_of_cartan(k)] = img;
  }

  // Route consistency: every g_+ x g_- bracket must already be represented.
  for (int i = 1; i < N; ++i)
    for (int j = 1; j < N; ++j) {
      WeylOp lhs = weyl_bracket(raise[j], lower[i]);
      WeylOp rhs = of_matrix(bracket(mn, basis_[basis_.index_of_unit(0, j)].mat,
                                     basis_[basis_.index_of_unit(i, 0)].mat));
      if (lhs != rhs)
        throw std::logic_error("Realization: bracket routes to g_0 disagree (sign error)");
    }

  // Extension to gl: E_ii maps through its traceless shift; the identity
  // component acts by zero and cancels on supertraceless slot pairs.
  unit_images_.resize(N * N, WeylOp(mn));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i != j) {
        unit_images_[i * N + j] = images_[basis_.index_of_unit(i, j)];
      } else {
        SuperMatrix shifted = unit_matrix(mn, i, i);
        Rat c = Rat(mn.sign(i)) / Rat(mn.t());
        for (int r = 0; r < N; ++r) shifted(r, r) -= c;
        unit_images_[i * N + j] = of_matrix(shifted);
      }
    }
  pair_cache_.assign(static_cast<size_t>(N) * N * N * N, WeylOp(mn));
  pair_cached_.assign(pair_cache_.size(), 0);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          size_t at = ((static_cast<size_t>(i) * N + j) * N + k) * N + l;
          pair_cache_[at] = weyl_mul(unit_images_[i * N + j], unit_images_[k * N + l]);
          pair_cached_[at] = 1;
        }
}

WeylOp Realization::of_matrix(const SuperMatrix& x) const {
  RatVec c = basis_.coords(x);
  WeylOp out(mn_);
  for (int a = 0; a < basis_.dim(); ++a) {
    if (c[a] == 0) continue;
    WeylOp term = images_[a];
    term.scale(c[a]);
    out += term;
  }
  return out;
}

const WeylOp& Realization::unit_pair_image(int i, int j, int k, int l) const {
  const int N = mn_.N();
  return pair_cache_[((static_cast<size_t>(i) * N + j) * N + k) * N + l];
}

WeylOp realize_tensor(const Realization& pi, const SuperTensor& t) {
  if (t.slots() % 2 != 0 || t.slots() > 6)
    throw std::invalid_argument("realize_tensor: expects 1..3 (V,V*) slot pairs");
  if (!is_pair_supertraceless(t))
    throw std::invalid_argument("realize_tensor: tensor is not supertraceless per slot pair");
  const int pairs = t.slots() / 2;
  WeylOp out(pi.mn());
  for (const auto& [key, v] : t.components()) {
    WeylOp w(pi.mn());
    if (pairs == 1) {
      w = pi.unit_image(tkey_get(key, 0), tkey_get(key, 1));
    } else {
      w = pi.unit_pair_image(tkey_get(key, 0), tkey_get(key, 1), tkey_get(key, 2),
                             tkey_get(key, 3));
      if (pairs == 3) w = weyl_mul(w, pi.unit_image(tkey_get(key, 4), tkey_get(key, 5)));
    }
    w.scale(v);
    out += w;
  }
  return out;
}

WeylOp realize_filtered(const Realization& pi, const FilteredElement& e, const Rat& lambda_value) {
  WeylOp out(pi.mn());
  for (const auto& [key, v] : e.deg2.components()) {
    WeylOp w = pi.unit_pair_image(tkey_get(key, 0), tkey_get(key, 1), tkey_get(key, 2),
                                  tkey_get(key, 3));
    w.scale(v.at(lambda_value));
    out += w;
  }
  for (const auto& [key, v] : e.deg1.components()) {
    WeylOp w = pi.unit_image(tkey_get(key, 0), tkey_get(key, 1));
    w.scale(v.at(lambda_value));
    out += w;
  }
  out += WeylOp::constant(pi.mn(), e.deg0.at(lambda_value));
  return out;
}

namespace {

void parallel_for(long count, int jobs, const std::function<void(long)>& body) {
  if (jobs <= 1 || count < 2) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  int workers = std::min<long>(jobs, count);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

HomomorphismReport check_homomorphism(const Realization& pi, int jobs) {
  const SlBasis& basis = pi.basis();
  const int d = basis.dim();
  HomomorphismReport rep;
  rep.pairs_checked = static_cast<long>(d) * d;
  std::vector<std::string> fail(d);
  parallel_for(d, jobs, [&](long a) {
    for (int c = 0; c < d; ++c) {
      WeylOp lhs = weyl_bracket(pi.image(static_cast<int>(a)), pi.image(c));
      WeylOp rhs = pi.of_matrix(bracket(pi.mn(), basis[static_cast<int>(a)].mat, basis[c].mat));
      if (lhs != rhs) {
        fail[a] = "[" + basis[static_cast<int>(a)].name + ", " + basis[c].name + "]";
        return;
      }
    }
  });
  for (const auto& f : fail)
    if (!f.empty()) {
      rep.first_failure = f;
      rep.pass = false;
      return rep;
    }
  rep.pass = true;
  return rep;
}

AnnihilationReport check_joseph_annihilated(Dims mn, std::optional<Rat> mu_override, int jobs) {
  if (mn.t() <= 2) throw std::domain_error("check_joseph_annihilated: m-n > 2 required");
  AnnihilationReport rep;
  rep.mn = mn;
  rep.mu = mu_override ? *mu_override : Rat(mn.n - mn.m) / Rat(2);
  rep.lambda_c = -Rat(1) / Rat(8 * (mn.t() + 1));
  Realization pi(mn, rep.mu);
  const SlBasis& basis = pi.basis();
  const int d = basis.dim();

  // (a) C, D vanish and E realizes as lambda_c K(A) over a basis of the
  // symmetric square.
  std::vector<std::pair<int, int>> sym_pairs;
  for (int a = 0; a < d; ++a)
    for (int c = a; c < d; ++c) {
      if (a == c && basis[a].parity == 1) continue;
      sym_pairs.push_back({a, c});
    }
  std::vector<std::string> fail_a(sym_pairs.size());
  parallel_for(static_cast<long>(sym_pairs.size()), jobs, [&](long i) {
    auto [a, c] = sym_pairs[i];
    SuperTensor xa = matrix_to_tensor(mn, basis[a].mat);
    SuperTensor xc = matrix_to_tensor(mn, basis[c].mat);
    SuperTensor A = outer(xa, xc);
    if (a != c) {
      SuperTensor rev = outer(xc, xa);
      if (basis[a].parity && basis[c].parity) rev.scale(Rat(-1));
      A += rev;
    }
    auto dec = decompose_sym(A, /*validate=*/false);
    if (!realize_tensor(pi, dec.C).is_zero()) {
      fail_a[i] = "pi(C) != 0 at A = sym(" + basis[a].name + "," + basis[c].name + ")";
      return;
    }
    if (!realize_tensor(pi, dec.D).is_zero()) {
      fail_a[i] = "pi(D) != 0 at A = sym(" + basis[a].name + "," + basis[c].name + ")";
      return;
    }
    WeylOp e_img = realize_tensor(pi, dec.E);
    WeylOp expect = WeylOp::constant(mn, rep.lambda_c * kappa(A));
    if (e_img != expect)
      fail_a[i] = "pi(E) != lambda_c K(A) at A = sym(" + basis[a].name + "," + basis[c].name + ")";
  });

  // (b) the quadratic relation for every ordered pair, assembled from the
  // realization directly; (c) the same content routed through the ideal
  // generators.
  std::vector<std::string> fail_b(static_cast<size_t>(d) * d), fail_c(static_cast<size_t>(d) * d);
  parallel_for(static_cast<long>(d) * d, jobs, [&](long idx) {
    int a = static_cast<int>(idx / d), c = static_cast<int>(idx % d);
    const SuperMatrix& X = basis[a].mat;
    const SuperMatrix& Y = basis[c].mat;
    WeylOp lhs = weyl_mul(pi.image(a), pi.image(c));
    lhs -= realize_tensor(pi, cartan_product(mn, X, Y));
    WeylOp br = pi.of_matrix(bracket(mn, X, Y));
    br.scale(rat(1, 2));
    lhs -= br;
    lhs -= WeylOp::constant(mn, rep.lambda_c * killing(mn, X, Y));
    if (!lhs.is_zero())
      fail_b[idx] = "rela != 0 at (" + basis[a].name + "," + basis[c].name + ")";
    FilteredElement gen = generator(mn, X, Y);
    if (!realize_filtered(pi, gen, rep.lambda_c).is_zero())
      fail_c[idx] = "pi(generator) != 0 at (" + basis[a].name + "," + basis[c].name + ")";
  });

  rep.cde_pass = true;
  for (const auto& f : fail_a)
    if (!f.empty()) {
      rep.cde_pass = false;
      rep.failing_cases.push_back(f);
    }
  rep.rela_pass = true;
  for (const auto& f : fail_b)
    if (!f.empty()) {
      rep.rela_pass = false;
      rep.failing_cases.push_back(f);
    }
  rep.generators_pass = true;
  for (const auto& f : fail_c)
    if (!f.empty()) {
      rep.generators_pass = false;
      rep.failing_cases.push_back(f);
    }
  if (rep.failing_cases.size() > 16) rep.failing_cases.resize(16);
  return rep;
}

std::string annihilation_report_json(const AnnihilationReport& r, bool homomorphism_pass) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["m"] = r.mn.m;
  j["n"] = r.mn.n;
  j["mu"] = rat_str(r.mu);
  j["homomorphism"] = homomorphism_pass ? "pass" : "fail";
  j["rela"] = r.rela_pass ? "pass" : "fail";
  j["cde_images"] = r.cde_pass ? "pass" : "fail";
  j["failing_cases"] = r.failing_cases;
  return j.dump();
}

CasimirImageReport casimir_image(const Realization& pi) {
  CasimirTensor cas = casimir_tensor(pi.mn());
  WeylOp image = realize_tensor(pi, cas.tensor);
  CasimirImageReport rep;
  WeylOp on_one = act_on_poly(image, WeylOp::constant(pi.mn(), Rat(1)));
  rep.scalar_on_constant = on_one.constant_coefficient();
  if (on_one != WeylOp::constant(pi.mn(), rep.scalar_on_constant))
    throw std::logic_error("casimir_image: action on the constant is not scalar");
  rep.commutes = true;
  for (int a = 0; a < pi.basis().dim() && rep.commutes; ++a) {
    if (weyl_mul(image, pi.image(a)) != weyl_mul(pi.image(a), image)) rep.commutes = false;
  }
  return rep;
}

namespace {

/// Total polynomial degree of a derivative-free term.
int poly_degree(Dims mn, const WeylTerm& t) {
  int deg = std::popcount(t.xodd);
  for (int e = 0; e < mn.m - 1; ++e) deg += xe_get(t.xdeg, e);
  return deg;
}

struct IncrementalRowSpace {
  std::vector<std::vector<Rat>> rows;  // echelon rows
  std::vector<int> lead;

  bool insert(std::vector<Rat> v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      if (v[lead[r]] == 0) continue;
      Rat f = v[lead[r]];
      for (size_t i = 0; i < v.size(); ++i) v[i] -= f * rows[r][i];
    }
    int l = -1;
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        l = static_cast<int>(i);
        break;
      }
    if (l < 0) return false;
    Rat inv = Rat(1) / v[l];
    for (auto& e : v) e *= inv;
    rows.push_back(std::move(v));
    lead.push_back(l);
    return true;
  }
  int rank() const { return static_cast<int>(rows.size()); }
};

}  // namespace

bool cyclicity_shadow_deg3(const Realization& pi) {
  const Dims mn = pi.mn();
  // Enumerate the monomials of degree <= 3.
  std::map<std::pair<uint64_t, uint32_t>, int> col_of;
  {
    std::vector<std::pair<uint64_t, uint32_t>> frontier{{0, 0}};
    std::map<std::pair<uint64_t, uint32_t>, int> seen{{{0, 0}, 0}};
    for (int deg = 0; deg < 3; ++deg) {
      std::vector<std::pair<uint64_t, uint32_t>> next;
      for (auto [xd, xo] : frontier) {
        for (int e = 0; e < mn.m - 1; ++e) {
          auto cand = std::make_pair(xe_set(xd, e, xe_get(xd, e) + 1), xo);
          if (seen.emplace(cand, 0).second) next.push_back(cand);
        }
        for (int o = 0; o < mn.n; ++o) {
          if (xo & (1u << o)) continue;
          auto cand = std::make_pair(xd, xo | (1u << o));
          if (seen.emplace(cand, 0).second) next.push_back(cand);
        }
      }
      frontier = std::move(next);
    }
    int id = 0;
    for (auto& [k, v] : seen) col_of[k] = id++;
  }
  const int dim_target = static_cast<int>(col_of.size());

  auto to_vec = [&](const WeylOp& p) {
    std::vector<Rat> v(dim_target, Rat(0));
    for (const auto& [t, c] : p.terms()) v[col_of.at({t.xdeg, t.xodd})] += c;
    return v;
  };

  IncrementalRowSpace space;
  std::vector<WeylOp> frontier{WeylOp::constant(mn, Rat(1))};
  space.insert(to_vec(frontier[0]));
  while (!frontier.empty() && space.rank() < dim_target) {
    std::vector<WeylOp> next;
    for (const auto& p : frontier) {
      for (int a = 0; a < pi.basis().dim(); ++a) {
        WeylOp q = act_on_poly(pi.image(a), p);
        bool in_range = true;
        for (const auto& [t, c] : q.terms())
          if (poly_degree(mn, t) > 3) {
            in_range = false;
            break;
          }
        if (!in_range || q.is_zero()) continue;
        if (space.insert(to_vec(q))) next.push_back(q);
      }
    }
    frontier = std::move(next);
  }
  return space.rank() == dim_target;
}

}  // namespace slmn
