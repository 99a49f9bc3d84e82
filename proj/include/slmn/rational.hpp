#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace slmn {

/// Exact rational scalar used throughout. All arithmetic in this library is
/// exact; there is no floating point anywhere in the math core.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parse "p/q" or "p". Throws on malformed input.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("rat_parse: zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Canonical "p/q" (or plain "p" when the denominator is 1).
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// Degree-<=1 polynomial a + b*lambda in the formal ideal parameter.
/// The ideal-family reductions are affine in lambda, so a product that would
/// produce a lambda^2 term indicates a logic error and throws.
struct LambdaLinear {
  Rat a{0};
  Rat b{0};

  LambdaLinear() = default;
  LambdaLinear(Rat constant) : a(std::move(constant)) {}  // NOLINT(google-explicit-constructor)
  LambdaLinear(Rat constant, Rat linear) : a(std::move(constant)), b(std::move(linear)) {}

  static LambdaLinear lambda() { return LambdaLinear(Rat(0), Rat(1)); }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_constant() const { return b == 0; }

  LambdaLinear& operator+=(const LambdaLinear& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  LambdaLinear& operator-=(const LambdaLinear& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  friend LambdaLinear operator+(LambdaLinear x, const LambdaLinear& y) { return x += y; }
  friend LambdaLinear operator-(LambdaLinear x, const LambdaLinear& y) { return x -= y; }
  friend LambdaLinear operator-(const LambdaLinear& x) { return {-x.a, -x.b}; }

  friend LambdaLinear operator*(const LambdaLinear& x, const LambdaLinear& y) {
    if (x.b != 0 && y.b != 0)
      throw std::domain_error("LambdaLinear: product would have degree 2 in lambda");
    return {x.a * y.a, x.a * y.b + x.b * y.a};
  }
  LambdaLinear& operator*=(const LambdaLinear& o) { return *this = *this * o; }

  friend bool operator==(const LambdaLinear& x, const LambdaLinear& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const LambdaLinear& x, const LambdaLinear& y) { return !(x == y); }

  /// Evaluate at a numeric value of lambda.
  Rat at(const Rat& lambda_value) const { return a + b * lambda_value; }

  /// "a+b*lambda" with zero terms elided; "0" if both vanish.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (a != 0) out += rat_str(a);
    if (b != 0) {
      if (!out.empty() && b > 0) out += "+";
      if (b == -1)
        out += "-";
      else if (b != 1)
        out += rat_str(b) + "*";
      out += "lambda";
    }
    return out;
  }
};

namespace scalar {
inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(const LambdaLinear& x) { return x.is_zero(); }
}  // namespace scalar

}  // namespace slmn

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 80
  };
};

}  // namespace Eigen
