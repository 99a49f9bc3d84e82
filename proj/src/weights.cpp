#include "slmn/weights.hpp"

#include <sstream>

namespace slmn {

Weight::Weight(Dims mn, RatVec coords) : mn_(mn), coords_(std::move(coords)) {
  if (coords_.size() != mn_.N())
    throw std::invalid_argument("Weight: coordinate count != m+n");
  Rat sum(0);
  for (int i = 0; i < coords_.size(); ++i) sum += coords_[i];
  if (sum != 0) throw std::invalid_argument("Weight: coefficients must add up to zero");
}

Weight::Weight(Dims mn) : mn_(mn), coords_(RatVec::Zero(mn.N())) {}

Weight Weight::root(Dims mn, int i, int j) {
  if (i < 0 || j < 0 || i >= mn.N() || j >= mn.N() || i == j)
    throw std::invalid_argument("Weight::root: bad indices");
  RatVec c = RatVec::Zero(mn.N());
  c[i] = 1;
  c[j] = -1;
  return Weight(mn, std::move(c));
}

bool Weight::is_zero() const {
  for (int i = 0; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

bool Weight::is_integer_vector() const {
  for (int i = 0; i < coords_.size(); ++i)
    if (!is_integer(coords_[i])) return false;
  return true;
}

Weight Weight::operator+(const Weight& o) const {
  if (mn_ != o.mn_) throw std::invalid_argument("Weight: mismatched (m,n)");
  return Weight(mn_, coords_ + o.coords_);
}

Weight Weight::operator-(const Weight& o) const {
  if (mn_ != o.mn_) throw std::invalid_argument("Weight: mismatched (m,n)");
  return Weight(mn_, coords_ - o.coords_);
}

Weight Weight::operator-() const { return Weight(mn_, -coords_); }

Weight Weight::operator*(const Rat& c) const {
  RatVec v = coords_;
  for (int i = 0; i < v.size(); ++i) v[i] *= c;
  return Weight(mn_, std::move(v));
}

bool Weight::operator==(const Weight& o) const {
  return mn_ == o.mn_ && coords_ == o.coords_;
}

bool Weight::operator<(const Weight& o) const {
  if (mn_.m != o.mn_.m) return mn_.m < o.mn_.m;
  if (mn_.n != o.mn_.n) return mn_.n < o.mn_.n;
  for (int i = 0; i < coords_.size(); ++i) {
    if (coords_[i] != o.coords_[i]) return coords_[i] < o.coords_[i];
  }
  return false;
}

std::string Weight::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < coords_.size(); ++i) {
    if (i == mn_.m)
      os << " | ";
    else if (i > 0)
      os << ", ";
    os << rat_str(coords_[i]);
  }
  os << ")";
  return os.str();
}

RootSystem root_system(Dims mn) {
  RootSystem rs;
  rs.mn = mn;
  for (int i = 0; i < mn.m; ++i)
    for (int j = i + 1; j < mn.m; ++j) rs.positive_even.push_back(Weight::root(mn, i, j));
  for (int i = mn.m; i < mn.N(); ++i)
    for (int j = i + 1; j < mn.N(); ++j) rs.positive_even.push_back(Weight::root(mn, i, j));
  for (int i = 0; i < mn.m; ++i)
    for (int j = mn.m; j < mn.N(); ++j) rs.positive_odd.push_back(Weight::root(mn, i, j));
  for (int i = 0; i + 1 < mn.N(); ++i) rs.simple.push_back(Weight::root(mn, i, i + 1));
  return rs;
}

Weight rho(Dims mn) {
  RatVec c(mn.N());
  for (int i = 1; i <= mn.m; ++i) c[i - 1] = rat(mn.m - mn.n - 2 * i + 1, 2);
  for (int j = 1; j <= mn.n; ++j) c[mn.m + j - 1] = rat(mn.n + mn.m - 2 * j + 1, 2);
  return Weight(mn, std::move(c));
}

Rat form_eval(const Weight& lam, const Weight& mu) {
  if (lam.mn() != mu.mn()) throw std::invalid_argument("form_eval: mismatched (m,n)");
  const Dims& mn = lam.mn();
  Rat s(0);
  for (int i = 0; i < mn.N(); ++i) {
    Rat term = lam[i] * mu[i];
    if (mn.parity(i)) term = -term;
    s += term;
  }
  return s;
}

Rat casimir_eigenvalue(const Weight& lam) {
  Weight r = rho(lam.mn());
  return form_eval(lam + r * Rat(2), lam);
}

Weight coroot(const Weight& alpha) {
  Rat aa = form_eval(alpha, alpha);
  if (aa == 0)
    throw std::domain_error("coroot: isotropic root has no coroot");
  return alpha * (Rat(2) / aa);
}

Weight lambda_k(int k, Dims mn) {
  if (k < 1) throw std::invalid_argument("lambda_k: k >= 1 required");
  RatVec c = RatVec::Zero(mn.N());
  c[0] = k;
  if (k <= mn.n) {
    for (int j = mn.n - k + 1; j <= mn.n; ++j) c[mn.m + j - 1] = -1;
  } else {
    c[mn.m - 1] = -(k - mn.n);
    for (int j = 1; j <= mn.n; ++j) c[mn.m + j - 1] = -1;
  }
  return Weight(mn, std::move(c));
}

Dominance dominance_status(const Weight& lam) {
  Weight shifted = lam + rho(lam.mn());
  RootSystem rs = root_system(lam.mn());
  for (const Weight& alpha : rs.positive_even) {
    Rat v = form_eval(shifted, coroot(alpha));
    if (!is_integer(v)) return Dominance::NotIntegral;
  }
  for (const Weight& alpha : rs.positive_even) {
    if (form_eval(shifted, coroot(alpha)) <= 0) return Dominance::NotDominant;
  }
  return Dominance::DominantRegular;
}

}  // namespace slmn
