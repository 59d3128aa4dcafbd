#pragma once

#include "wshift/scalar.hpp"
#include "wshift/vector.hpp"

#include <cstdint>
#include <vector>

namespace wshift {

/// Stable enumeration m -> y^(m) of all finitely supported vectors with
/// rational (or Gaussian-rational) coordinates.
///
/// Order: by height, then lexicographically. The height of a nonzero vector
/// is the largest of its max_support and of every |numerator| and
/// denominator among its coordinate parts; the zero vector has height 0 and
/// is y^(1). Vectors of height h are the tuples (x_1, ..., x_h) over the
/// alphabet of scalars of height <= h, minus those of lower height, compared
/// left to right with the alphabet sorted by value (complex: real part, then
/// imaginary part).
class DenseEnumeration {
 public:
  explicit DenseEnumeration(Field field = Field::real) : field_(field) {}

  Field field() const { return field_; }

  /// y^(m) for m >= 1.
  CoordVector at(std::uint64_t m) const;

  /// Inverse of at(). Throws Error for vectors outside the enumerated set
  /// (complex coordinates in a real enumeration) or indices beyond 64 bits.
  std::uint64_t index_of(const CoordVector& v) const;

  /// y^(1), ..., y^(count).
  std::vector<CoordVector> first(std::size_t count) const;

 private:
  Field field_;
};

inline CoordVector enumerate_dense(Field field, std::uint64_t m) { return DenseEnumeration(field).at(m); }

/// Height of a scalar: max of |numerator| and denominator over its parts.
Integer scalar_height(const Scalar& s);
/// Height of a vector as defined above.
Integer vector_height(const CoordVector& v);

/// k = max_support(y) and S = sum_k |y_k| (certified upper endpoint for
/// coordinates with irrational modulus).
struct TargetMetadata {
  Index k = 0;
  Rational S;
};

TargetMetadata target_metadata(const CoordVector& y, unsigned precision = 64);

}  // namespace wshift
