#pragma once

// Exact scalars: rationals and Gaussian rationals backed by GMP, plus
// certified modulus intervals for quantities that are not rational.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wshift {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

enum class Field { real, complex };

/// Closed rational interval [lo, hi]. Used for moduli and norms whose exact
/// value may be irrational.
struct Interval {
  Rational lo;
  Rational hi;

  bool degenerate() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

using ModulusInterval = Interval;

/// An element of Q or Q(i). Always canonical (GMP reduced form). The field
/// tag is sticky: any operation touching a complex operand yields a complex
/// result, but equality compares values only.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
  Scalar(Rational re, Rational im);

  static Scalar complex(Rational re, Rational im) {
    return Scalar(std::move(re), std::move(im));
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  Field field() const { return field_; }
  bool is_complex() const { return field_ == Field::complex; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real_valued() const { return sgn(im_) == 0; }

  Scalar operator-() const;
  Scalar conj() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);  // throws DivisionByZero

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Multiplicative inverse; throws DivisionByZero for zero.
  Scalar inverse() const;

  /// "p/q" for real scalars, "a+b*i" / "a-b*i" for complex ones.
  std::string to_string() const;

  /// Accepts "p", "p/q", "a/b+c/d*i", "1-i", "-3*i". Throws ParseError.
  static Scalar parse(std::string_view text);

 private:
  Rational re_;
  Rational im_;
  Field field_ = Field::real;
};

enum class FieldOp { add, sub, mul, div };

/// Exact field operation. Division by zero yields nullopt instead of a value.
std::optional<Scalar> field_op(const Scalar& a, const Scalar& b, FieldOp op);

/// |z|^2 = re^2 + im^2, exact.
Rational modulus_squared(const Scalar& z);

/// Certified enclosure of |z|; degenerate whenever |z| is rational.
/// Width is at most 2^-precision * max(hi, 1).
ModulusInterval modulus_interval(const Scalar& z, unsigned precision);

/// Orders |a| against |b| exactly through modulus_squared.
std::strong_ordering compare_modulus(const Scalar& a, const Scalar& b);

/// Enclosure of q^(1/n) for q >= 0 with width <= 2^-precision; degenerate
/// when the root is rational.
Interval root_interval(const Rational& q, unsigned long n, unsigned precision);

/// If q is the square of a rational, returns that nonnegative root.
std::optional<Rational> exact_sqrt(const Rational& q);

Rational pow(const Rational& base, unsigned long exponent);
Scalar pow(const Scalar& base, unsigned long exponent);

/// 1 / 2^bits.
Rational pow2_inverse(unsigned bits);

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

/// Rational |x| for rational x.
inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace wshift
