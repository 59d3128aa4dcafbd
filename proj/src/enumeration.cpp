#include "wshift/enumeration.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace wshift {

namespace {

std::vector<Rational> rational_alphabet(unsigned long h) {
  std::vector<Rational> out;
  out.emplace_back(0);
  for (unsigned long q = 1; q <= h; ++q) {
    for (unsigned long p = 1; p <= h; ++p) {
      if (std::gcd(p, q) != 1) continue;
      out.emplace_back(Integer(p), Integer(q));
      out.emplace_back(Integer(p) * -1, Integer(q));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool scalar_less(const Scalar& a, const Scalar& b) {
  if (a.re() != b.re()) return a.re() < b.re();
  return a.im() < b.im();
}

std::vector<Scalar> alphabet(Field field, unsigned long h) {
  const std::vector<Rational> base = rational_alphabet(h);
  std::vector<Scalar> out;
  if (field == Field::real) {
    for (const Rational& q : base) out.emplace_back(q);
    return out;
  }
  for (const Rational& re : base) {
    for (const Rational& im : base) out.push_back(Scalar::complex(re, im));
  }
  return out;  // already ordered by (re, im)
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// Vectors of height <= h.
Integer cumulative(Field field, unsigned long h) {
  if (h == 0) return 1;
  return ipow(Integer(static_cast<unsigned long>(alphabet(field, h).size())), h);
}

// Counts tuples of height exactly h extending `prefix`.
class HeightCounter {
 public:
  HeightCounter(Field field, unsigned long h)
      : h_(h),
        size_(static_cast<unsigned long>(alphabet(field, h).size())),
        low_size_(h > 1 ? static_cast<unsigned long>(alphabet(field, h - 1).size()) : 0) {}

  Integer exact(const std::vector<Scalar>& prefix) const {
    const unsigned long len = prefix.size();
    return ipow(Integer(size_), h_ - len) - low(prefix);
  }

 private:
  // Tuples extending prefix with x_h = 0 and every coordinate of height < h.
  Integer low(const std::vector<Scalar>& prefix) const {
    const unsigned long len = prefix.size();
    for (unsigned long i = 0; i < len; ++i) {
      const unsigned long position = i + 1;
      if (position == h_) {
        if (!prefix[i].is_zero()) return 0;
      } else if (scalar_height(prefix[i]) >= h_) {
        return 0;
      }
    }
    const unsigned long free_positions = len >= h_ - 1 ? 0 : h_ - 1 - len;
    return ipow(Integer(low_size_), free_positions);
  }

  unsigned long h_;
  unsigned long size_;
  unsigned long low_size_;
};

}  // namespace

Integer scalar_height(const Scalar& s) {
  Integer out = abs(s.re().get_num());
  out = std::max(out, Integer(s.re().get_den()));
  if (s.is_complex() || !s.is_real_valued()) {
    out = std::max(out, Integer(abs(s.im().get_num())));
    out = std::max(out, Integer(s.im().get_den()));
  }
  return out;
}

Integer vector_height(const CoordVector& v) {
  if (v.is_zero()) return 0;
  Integer out = static_cast<unsigned long>(v.max_support());
  for (const auto& [k, x] : v) out = std::max(out, scalar_height(x));
  return out;
}

CoordVector DenseEnumeration::at(std::uint64_t m) const {
  if (m == 0) throw Error("dense enumeration is indexed from 1");
  const Integer target(static_cast<unsigned long>(m));
  if (m == 1) return {};
  unsigned long h = 1;
  Integer below = 1;  // vectors of height < h
  for (;; ++h) {
    const Integer upto = cumulative(field_, h);
    if (target <= upto) break;
    below = upto;
  }
  Integer rank = target - below - 1;
  const std::vector<Scalar> letters = alphabet(field_, h);
  const HeightCounter counter(field_, h);
  std::vector<Scalar> tuple;
  tuple.reserve(h);
  for (unsigned long position = 1; position <= h; ++position) {
    bool placed = false;
    for (const Scalar& letter : letters) {
      tuple.push_back(letter);
      const Integer count = counter.exact(tuple);
      if (rank < count) {
        placed = true;
        break;
      }
      rank -= count;
      tuple.pop_back();
    }
    if (!placed) throw Error("dense enumeration rank out of range");
  }
  CoordVector out;
  for (unsigned long i = 0; i < h; ++i) out.set(i + 1, tuple[i]);
  return out;
}

std::uint64_t DenseEnumeration::index_of(const CoordVector& v) const {
  if (v.is_zero()) return 1;
  if (field_ == Field::real) {
    for (const auto& [k, x] : v) {
      if (!x.is_real_valued()) throw Error("complex coordinate in a real dense enumeration");
    }
  }
  const Integer height = vector_height(v);
  if (!height.fits_ulong_p()) throw Error("vector height too large to enumerate");
  const unsigned long h = height.get_ui();
  Integer rank = cumulative(field_, h - 1) + 1;
  const std::vector<Scalar> letters = alphabet(field_, h);
  const HeightCounter counter(field_, h);
  std::vector<Scalar> prefix;
  for (unsigned long position = 1; position <= h; ++position) {
    const Scalar x = v.coordinate(position);
    for (const Scalar& letter : letters) {
      if (!scalar_less(letter, x)) break;
      prefix.push_back(letter);
      rank += counter.exact(prefix);
      prefix.pop_back();
    }
    prefix.push_back(x);
  }
  if (!rank.fits_ulong_p() || rank.get_ui() > std::numeric_limits<std::uint64_t>::max()) {
    throw Error("dense enumeration index exceeds 64 bits");
  }
  return rank.get_ui();
}

std::vector<CoordVector> DenseEnumeration::first(std::size_t count) const {
  std::vector<CoordVector> out;
  out.reserve(count);
  for (std::size_t m = 1; m <= count; ++m) out.push_back(at(m));
  return out;
}

TargetMetadata target_metadata(const CoordVector& y, unsigned precision) {
  return {y.max_support(), l1_upper(y, precision)};
}

}  // namespace wshift
