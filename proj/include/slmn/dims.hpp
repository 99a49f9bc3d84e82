#pragma once

#include <stdexcept>

namespace slmn {

/// Block sizes of sl(m|n). Indices 0..m-1 are even, m..m+n-1 odd.
struct Dims {
  int m = 0;
  int n = 0;

  Dims() = default;
  Dims(int m_, int n_) : m(m_), n(n_) {
    if (m < 1 || n < 1) throw std::invalid_argument("Dims: need m >= 1 and n >= 1");
    if (m == n) throw std::invalid_argument("Dims: m == n is degenerate (supertrace form)");
  }

  int N() const { return m + n; }
  int t() const { return m - n; }

  /// Parity of a 0-based index: 0 for the first m, 1 for the last n.
  int parity(int i) const { return i >= m ? 1 : 0; }
  int sign(int i) const { return i >= m ? -1 : 1; }

  friend bool operator==(const Dims& a, const Dims& b) { return a.m == b.m && a.n == b.n; }
  friend bool operator!=(const Dims& a, const Dims& b) { return !(a == b); }
};

}  // namespace slmn
