#include "slmn/linalg.hpp"

#include <stdexcept>

namespace slmn {

namespace {

/// Clear denominators row by row; row scaling leaves rank, pivots and kernel
/// unchanged.
IntMat clear_denominators(const RatMat& a) {
  IntMat z(a.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    mpz_class l(1);
    for (Eigen::Index c = 0; c < a.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den_mpz_t());
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      mpz_class num = a(r, c).get_num();
      mpz_class den = a(r, c).get_den();
      z(r, c) = num * (l / den);
    }
  }
  return z;
}

struct BareissResult {
  IntMat mat;          // echelon form, fraction-free
  std::vector<int> pivot_cols;
  int rank = 0;
};

/// One-step fraction-free Gaussian elimination (Bareiss). Exact division by
/// the previous pivot keeps entries at determinant scale.
BareissResult bareiss(IntMat m) {
  BareissResult out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  mpz_class prev(1);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        mpz_class num = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    out.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  out.rank = static_cast<int>(r);
  out.mat = std::move(m);
  return out;
}

}  // namespace

Echelon echelon_exact(const RatMat& a) {
  BareissResult b = bareiss(clear_denominators(a));
  return Echelon{b.rank, b.pivot_cols};
}

int rank_exact(const RatMat& a) { return echelon_exact(a).rank; }

RatMat kernel_exact(const RatMat& a) {
  const Eigen::Index cols = a.cols();
  BareissResult b = bareiss(clear_denominators(a));
  std::vector<bool> is_pivot(cols, false);
  for (int c : b.pivot_cols) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(static_cast<int>(c));

  RatMat k(cols, static_cast<Eigen::Index>(free_cols.size()));
  k.setConstant(Rat(0));
  for (size_t fi = 0; fi < free_cols.size(); ++fi) {
    const int f = free_cols[fi];
    k(f, static_cast<Eigen::Index>(fi)) = 1;
    // Back-substitute through the echelon rows above.
    for (int r = b.rank - 1; r >= 0; --r) {
      const int pc = b.pivot_cols[r];
      if (pc > f) continue;
      Rat s(0);
      for (Eigen::Index c = pc + 1; c < cols; ++c) {
        if (b.mat(r, c) == 0) continue;
        if (k(c, static_cast<Eigen::Index>(fi)) == 0) continue;
        s += Rat(b.mat(r, c)) * k(c, static_cast<Eigen::Index>(fi));
      }
      k(pc, static_cast<Eigen::Index>(fi)) = -s / Rat(b.mat(r, pc));
    }
  }
  return k;
}

std::optional<RatMat> solve_exact(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_exact: shape mismatch");
  RatMat aug(a.rows(), a.cols() + b.cols());
  aug.block(0, 0, a.rows(), a.cols()) = a;
  aug.block(0, a.cols(), b.rows(), b.cols()) = b;

  // Gauss-Jordan over the rationals; the augmented part stays exact.
  Eigen::Index r = 0;
  std::vector<int> pivot_cols;
  for (Eigen::Index c = 0; c < a.cols() && r < aug.rows(); ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < aug.rows(); ++i)
      if (aug(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) aug.row(piv).swap(aug.row(r));
    Rat inv = Rat(1) / aug(r, c);
    for (Eigen::Index j = c; j < aug.cols(); ++j) aug(r, j) *= inv;
    for (Eigen::Index i = 0; i < aug.rows(); ++i) {
      if (i == r || aug(i, c) == 0) continue;
      Rat f = aug(i, c);
      for (Eigen::Index j = c; j < aug.cols(); ++j) aug(i, j) -= f * aug(r, j);
    }
    pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  // Consistency: no nonzero rhs rows below the pivot rows.
  for (Eigen::Index i = r; i < aug.rows(); ++i)
    for (Eigen::Index j = a.cols(); j < aug.cols(); ++j)
      if (aug(i, j) != 0) return std::nullopt;

  RatMat x(a.cols(), b.cols());
  x.setConstant(Rat(0));
  for (size_t k = 0; k < pivot_cols.size(); ++k)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      x(pivot_cols[k], j) = aug(static_cast<Eigen::Index>(k), a.cols() + j);
  return x;
}

RatMat inverse_exact(const RatMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse_exact: not square");
  RatMat id(a.rows(), a.cols());
  id.setConstant(Rat(0));
  for (Eigen::Index i = 0; i < a.rows(); ++i) id(i, i) = 1;
  auto x = solve_exact(a, id);
  if (!x || rank_exact(a) != a.rows()) throw std::domain_error("inverse_exact: singular matrix");
  return *x;
}

// ---------------------------------------------------------------------------
// Modular layer
// ---------------------------------------------------------------------------

const std::vector<uint64_t>& modular_primes() {
  static const std::vector<uint64_t> primes = {
      2147483647ULL, 2147483629ULL, 2147483587ULL, 2147483579ULL, 2147483563ULL,
      2147483549ULL, 2147483543ULL, 2147483497ULL, 2147483489ULL, 2147483477ULL,
      2147483423ULL, 2147483399ULL, 2147483353ULL, 2147483323ULL, 2147483269ULL,
      2147483249ULL, 2147483237ULL, 2147483179ULL, 2147483171ULL, 2147483137ULL};
  return primes;
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(p), nr = static_cast<int64_t>(a % p);
  while (nr != 0) {
    int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  if (t < 0) t += static_cast<int64_t>(p);
  return static_cast<uint64_t>(t);
}

std::optional<U64Mat> reduce_mod(const RatMat& a, uint64_t p) {
  U64Mat z(a.rows(), a.cols());
  mpz_class pz(static_cast<unsigned long>(p));
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      mpz_class num = a(r, c).get_num() % pz;
      mpz_class den = a(r, c).get_den() % pz;
      uint64_t d = den.get_ui();
      if (num < 0) num += pz;
      if (d == 0) return std::nullopt;
      uint64_t nv = num.get_ui();
      z(r, c) = (nv * inv_mod(d, p)) % p;
    }
  }
  return z;
}

ModKernel kernel_mod_p(U64Mat a, uint64_t p) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  ModKernel out;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (a(i, c) % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      out.free_cols.push_back(static_cast<int>(c));
      continue;
    }
    if (piv != r) a.row(piv).swap(a.row(r));
    uint64_t inv = inv_mod(a(r, c) % p, p);
    for (Eigen::Index j = c; j < cols; ++j) a(r, j) = (a(r, j) % p) * inv % p;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      uint64_t f = a(i, c) % p;
      if (f == 0) continue;
      for (Eigen::Index j = c; j < cols; ++j) {
        uint64_t sub = (f * (a(r, j) % p)) % p;
        a(i, j) = (a(i, j) % p + p - sub) % p;
      }
    }
    out.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  for (Eigen::Index c = (out.pivot_cols.empty() ? 0 : out.pivot_cols.back() + 1); c < cols; ++c) {
    if (std::find(out.pivot_cols.begin(), out.pivot_cols.end(), static_cast<int>(c)) ==
            out.pivot_cols.end() &&
        std::find(out.free_cols.begin(), out.free_cols.end(), static_cast<int>(c)) ==
            out.free_cols.end())
      out.free_cols.push_back(static_cast<int>(c));
  }
  out.rank = static_cast<int>(out.pivot_cols.size());

  out.kernel = U64Mat::Zero(cols, static_cast<Eigen::Index>(out.free_cols.size()));
  for (size_t fi = 0; fi < out.free_cols.size(); ++fi) {
    const int f = out.free_cols[fi];
    out.kernel(f, static_cast<Eigen::Index>(fi)) = 1;
    for (int rr = 0; rr < out.rank; ++rr) {
      uint64_t v = a(rr, f) % p;
      if (v != 0) out.kernel(out.pivot_cols[rr], static_cast<Eigen::Index>(fi)) = p - v;
    }
  }
  return out;
}

std::optional<Rat> rational_reconstruct(const mpz_class& r0, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r = r0 % m;
  if (r < 0) r += m;
  mpz_class v0 = m, v1 = r;
  mpz_class t0 = 0, t1 = 1;
  while (v1 > bound) {
    mpz_class q = v0 / v1;
    mpz_class vn = v0 - q * v1;
    mpz_class tn = t0 - q * t1;
    v0 = v1;
    v1 = vn;
    t0 = t1;
    t1 = tn;
  }
  if (t1 == 0) return std::nullopt;
  mpz_class den = t1 < 0 ? mpz_class(-t1) : t1;
  mpz_class num = t1 < 0 ? mpz_class(-v1) : v1;
  if (den > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rat q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool verify_kernel(const RatMat& a, const RatMat& k) {
  // Exact sparse-aware check of A * k == 0.
  for (Eigen::Index col = 0; col < k.cols(); ++col) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      Rat s(0);
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        if (a(r, c) == 0 || k(c, col) == 0) continue;
        s += a(r, c) * k(c, col);
      }
      if (s != 0) return false;
    }
  }
  return true;
}

}  // namespace

CertifiedKernel certified_kernel(const RatMat& a, int exact_threshold) {
  CertifiedKernel out;
  if (a.cols() <= exact_threshold) {
    out.kernel = kernel_exact(a);
    out.rank = static_cast<int>(a.cols() - out.kernel.cols());
    return out;
  }

  const auto& primes = modular_primes();
  // Accumulated CRT state for the reduced kernel entries, keyed by the free
  // column structure of the first usable prime.
  std::vector<int> free_cols, pivot_cols;
  int rank = -1;
  mpz_class modulus = 1;
  std::vector<std::vector<mpz_class>> acc;  // acc[free][row]

  for (size_t pi = 0; pi < primes.size(); ++pi) {
    uint64_t p = primes[pi];
    auto red = reduce_mod(a, p);
    if (!red) continue;
    ModKernel mk = kernel_mod_p(std::move(*red), p);
    if (rank < 0 || mk.rank > rank) {
      // First prime, or an earlier prime was unlucky (lower rank): restart.
      rank = mk.rank;
      free_cols = mk.free_cols;
      pivot_cols = mk.pivot_cols;
      modulus = 1;
      acc.assign(free_cols.size(), std::vector<mpz_class>(a.cols(), mpz_class(0)));
    } else if (mk.rank < rank || mk.free_cols != free_cols) {
      continue;  // unlucky prime for this modulus; skip
    }
    // CRT-combine this prime's kernel into the accumulator.
    mpz_class pz(static_cast<unsigned long>(p));
    for (size_t f = 0; f < free_cols.size(); ++f) {
      for (Eigen::Index r = 0; r < a.cols(); ++r) {
        mpz_class cur = acc[f][r] % modulus;
        mpz_class target(static_cast<unsigned long>(mk.kernel(r, static_cast<Eigen::Index>(f))));
        if (modulus == 1) {
          acc[f][r] = target;
          continue;
        }
        // x = cur + modulus * k with x = target mod p.
        mpz_class minv, mm = modulus % pz;
        if (mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), pz.get_mpz_t()) == 0) continue;
        mpz_class k = ((target - cur) % pz * minv) % pz;
        if (k < 0) k += pz;
        acc[f][r] = cur + modulus * k;
      }
    }
    modulus *= pz;

    if (pi == 0 || modulus > mpz_class(1) << 40) {
      // Attempt reconstruction + exact verification.
      RatMat cand(a.cols(), static_cast<Eigen::Index>(free_cols.size()));
      bool ok = true;
      for (size_t f = 0; f < free_cols.size() && ok; ++f) {
        for (Eigen::Index r = 0; r < a.cols() && ok; ++r) {
          auto q = rational_reconstruct(acc[f][r], modulus);
          if (!q)
            ok = false;
          else
            cand(r, static_cast<Eigen::Index>(f)) = *q;
        }
      }
      if (ok && verify_kernel(a, cand)) {
        // rank (mod p) + verified nullity == cols certifies exactness.
        if (rank + static_cast<int>(free_cols.size()) == static_cast<int>(a.cols())) {
          out.rank = rank;
          out.kernel = std::move(cand);
          out.used_modular = true;
          return out;
        }
      }
    }
  }

  // Fall back to the fully exact path.
  out.kernel = kernel_exact(a);
  out.rank = static_cast<int>(a.cols() - out.kernel.cols());
  return out;
}

int certified_rank(const RatMat& a, int exact_threshold) {
  if (a.rows() < a.cols()) {
    RatMat t = a.transpose();
    CertifiedKernel k = certified_kernel(t, exact_threshold);
    return k.rank;
  }
  return certified_kernel(a, exact_threshold).rank;
}

}  // namespace slmn
