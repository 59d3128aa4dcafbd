#include "wshift/enumeration.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

using namespace wshift;

namespace {

Rational q(long num, long den = 1) {
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

// All reduced p/q with |p| <= h, 1 <= q <= h, sorted by value.
std::vector<Rational> rational_alphabet(long h) {
  std::vector<Rational> out;
  for (long den = 1; den <= h; ++den) {
    for (long num = -h; num <= h; ++num) {
      if (std::gcd(num, den) == 1 || (num == 0 && den == 1)) out.push_back(q(num, den));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Scalar> scalar_alphabet(long h, Field field) {
  const std::vector<Rational> reals = rational_alphabet(h);
  std::vector<Scalar> out;
  if (field == Field::real) {
    for (const Rational& r : reals) out.emplace_back(r);
  } else {
    for (const Rational& re : reals) {
      for (const Rational& im : reals) out.push_back(Scalar::complex(re, im));
    }
  }
  return out;
}

long height_of(const CoordVector& v) {
  if (v.is_zero()) return 0;
  long h = static_cast<long>(v.max_support());
  for (const auto& [k, x] : v) {
    for (const Rational* part : {&x.re(), &x.im()}) {
      h = std::max(h, std::labs(part->get_num().get_si()));
      h = std::max(h, static_cast<long>(part->get_den().get_si()));
    }
  }
  return h;
}

// Direct listing of every vector of height <= max_height in the documented order.
std::vector<CoordVector> brute_force_order(long max_height, Field field) {
  std::vector<CoordVector> out{CoordVector()};
  for (long h = 1; h <= max_height; ++h) {
    const std::vector<Scalar> alphabet = scalar_alphabet(h, field);
    std::vector<std::size_t> digits(static_cast<std::size_t>(h), 0);
    for (;;) {
      CoordVector v;
      for (std::size_t i = 0; i < digits.size(); ++i) v.set(i + 1, alphabet[digits[i]]);
      if (height_of(v) == h) out.push_back(v);
      std::size_t pos = digits.size();
      while (pos > 0 && ++digits[pos - 1] == alphabet.size()) digits[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return out;
}

std::uint64_t fnv1a(const std::string& text, std::uint64_t hash = 1469598103934665603ULL) {
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace

TEST_CASE("first elements") {
  const DenseEnumeration e;
  CHECK(e.at(1).is_zero());
  CHECK(e.at(2) == CoordVector::parse("{1: -1}"));
  CHECK(e.at(3) == CoordVector::parse("{1: 1}"));
  CHECK(e.at(4) == CoordVector::parse("{1: -2, 2: -2}"));
  // 1 + 2 + (7^2 - 3) elements up to height 2.
  CHECK(e.at(49) == CoordVector::parse("{1: 2, 2: 2}"));
  CHECK(height_of(e.at(50)) == 3);
  CHECK(enumerate_dense(Field::real, 3) == e.at(3));
  CHECK_THROWS_AS(e.at(0), Error);
}

TEST_CASE("real order matches a brute-force listing") {
  const std::vector<CoordVector> expected = brute_force_order(3, Field::real);
  const DenseEnumeration e;
  const std::vector<CoordVector> actual = e.first(expected.size());
  REQUIRE(actual.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i + 1);
    CHECK(actual[i] == expected[i]);
  }
}

TEST_CASE("complex order matches a brute-force listing") {
  const std::vector<CoordVector> expected = brute_force_order(2, Field::complex);
  const DenseEnumeration e(Field::complex);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i + 1);
    CHECK(e.at(i + 1) == expected[i]);
    CHECK(e.index_of(expected[i]) == i + 1);
  }
}

TEST_CASE("round-trip and injectivity for m <= 10^4") {
  const DenseEnumeration e;
  std::set<std::string> seen;
  for (std::uint64_t m = 1; m <= 10000; ++m) {
    const CoordVector v = e.at(m);
    CHECK(e.index_of(v) == m);
    CHECK(seen.insert(v.to_string()).second);
    for (const auto& [k, x] : v) CHECK_FALSE(x.is_complex());
  }
}

TEST_CASE("index_of covers arbitrary vectors") {
  const DenseEnumeration e;
  for (const char* text : {"{1: 3/4, 4: -1/5}", "{5: 1}", "{2: 2, 3: -5/4}", "{6: 1/6}"}) {
    const CoordVector v = CoordVector::parse(text);
    CHECK(e.at(e.index_of(v)) == v);
  }
  CHECK_THROWS_AS(e.index_of(CoordVector::parse("{1: 1+i}")), Error);
  CHECK_THROWS_AS(e.index_of(CoordVector::basis(40)), Error);
  const DenseEnumeration c(Field::complex);
  const CoordVector z = CoordVector::parse("{1: 1/2-3*i, 3: 2}");
  CHECK(c.at(c.index_of(z)) == z);
}

TEST_CASE("golden hash of the first 1000 elements") {
  std::uint64_t hash = 1469598103934665603ULL;
  for (const CoordVector& v : DenseEnumeration().first(1000)) hash = fnv1a(v.to_string() + "\n", hash);
  std::ostringstream text;
  text << std::hex << hash;

  const std::string path = std::string(WSHIFT_GOLDEN_DIR) + "/enumeration_real_1000.fnv1a";
  if (std::getenv("WSHIFT_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path) << text.str() << "\n";
  }
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
  std::string pinned;
  in >> pinned;
  CHECK(pinned == text.str());
}

TEST_CASE("target metadata") {
  const TargetMetadata e1 = target_metadata(CoordVector::basis(1));
  CHECK(e1.k == 1);
  CHECK(e1.S == 1);
  const TargetMetadata y = target_metadata(CoordVector::parse("{1: 2, 2: -1}"));
  CHECK(y.k == 2);
  CHECK(y.S == 3);
  const TargetMetadata zero = target_metadata(CoordVector());
  CHECK(zero.k == 0);
  CHECK(zero.S == 0);
  // |3+4i| = 5 exactly, |1+i| is bounded above.
  CHECK(target_metadata(CoordVector::parse("{2: 3+4*i}")).S == 5);
  const TargetMetadata irr = target_metadata(CoordVector::parse("{1: 1+i}"), 20);
  CHECK(irr.S * irr.S >= 2);
  CHECK(irr.S * irr.S <= 2 + q(1, 1000));
}

TEST_CASE("property: metadata recomputes from the element") {
  const DenseEnumeration e;
  for (std::uint64_t m = 1; m <= 2000; m += 7) {
    const CoordVector v = e.at(m);
    const TargetMetadata md = target_metadata(v);
    CHECK(md.k == v.max_support());
    Rational s = 0;
    for (const auto& [k, x] : v) s += abs(x.re());
    CHECK(md.S == s);
    CHECK(vector_height(v) == height_of(v));
  }
}

TEST_CASE("scalar heights") {
  CHECK(scalar_height(Scalar()) == 1);
  CHECK(scalar_height(Scalar(q(-7, 3))) == 7);
  CHECK(scalar_height(Scalar(q(2, 9))) == 9);
  CHECK(scalar_height(Scalar::complex(q(1, 2), -5)) == 5);
}
