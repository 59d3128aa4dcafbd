#pragma once

#include "wshift/scalar.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace wshift {

/// Basis index, 1-based.
using Index = std::size_t;

/// Finitely supported coordinate vector sum_k x_k e_k relative to a
/// normalized Schauder basis. Zero coordinates are never stored, so equality
/// is support-and-value equality.
class CoordVector {
 public:
  using Storage = std::map<Index, Scalar>;
  using const_iterator = Storage::const_iterator;

  CoordVector() = default;

  /// e_k. Throws Error for k = 0.
  static CoordVector basis(Index k);

  /// x_k, zero outside the support. Throws Error for k = 0.
  Scalar coordinate(Index k) const;

  /// Sets x_k, erasing it when value is zero.
  void set(Index k, Scalar value);
  /// x_k += value.
  void add(Index k, const Scalar& value);

  /// Largest index with a nonzero coordinate, 0 for the zero vector.
  Index max_support() const { return coords_.empty() ? 0 : coords_.rbegin()->first; }
  std::size_t support_size() const { return coords_.size(); }
  bool is_zero() const { return coords_.empty(); }

  const_iterator begin() const { return coords_.begin(); }
  const_iterator end() const { return coords_.end(); }

  CoordVector& operator+=(const CoordVector& other);
  CoordVector& operator-=(const CoordVector& other);
  CoordVector& operator*=(const Scalar& alpha);

  friend CoordVector operator+(CoordVector a, const CoordVector& b) { return a += b; }
  friend CoordVector operator-(CoordVector a, const CoordVector& b) { return a -= b; }
  friend CoordVector operator*(const Scalar& alpha, CoordVector v) { return v *= alpha; }
  friend bool operator==(const CoordVector& a, const CoordVector& b) { return a.coords_ == b.coords_; }

  /// Restriction to indices lo..hi inclusive.
  CoordVector restrict_to(Index lo, Index hi) const;

  /// "{1: 1/2, 4: -3}"; the zero vector is "{}".
  std::string to_string() const;
  static CoordVector parse(std::string_view text);

 private:
  Storage coords_;
};

/// Sum of |x_k| when every modulus is rational; otherwise the sum of certified
/// upper endpoints at the given precision.
Rational l1_upper(const CoordVector& v, unsigned precision = 64);

}  // namespace wshift
