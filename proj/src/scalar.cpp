#include "wshift/scalar.hpp"
#include "text.hpp"

#include <cctype>
#include <regex>

namespace wshift {

using detail::trim;

namespace {

Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

// floor(x^(1/n)) for x >= 0, and whether the root is exact.
std::pair<Integer, bool> integer_root(const Integer& x, unsigned long n) {
  Integer r;
  const bool exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), n) != 0;
  return {r, exact};
}

}  // namespace

Scalar::Scalar(Rational re, Rational im)
    : re_(canonical(std::move(re))), im_(canonical(std::move(im))), field_(Field::complex) {}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  out.re_ = -out.re_;
  out.im_ = -out.im_;
  return out;
}

Scalar Scalar::conj() const {
  Scalar out = *this;
  out.im_ = -out.im_;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  re_ += other.re_;
  im_ += other.im_;
  if (other.is_complex()) field_ = Field::complex;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  re_ -= other.re_;
  im_ -= other.im_;
  if (other.is_complex()) field_ = Field::complex;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  if (sgn(im_) == 0 && sgn(other.im_) == 0) {
    re_ *= other.re_;
  } else {
    Rational re = re_ * other.re_ - im_ * other.im_;
    Rational im = re_ * other.im_ + im_ * other.re_;
    re_ = std::move(re);
    im_ = std::move(im);
  }
  if (other.is_complex()) field_ = Field::complex;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  if (other.is_zero()) throw DivisionByZero();
  if (sgn(other.im_) == 0) {
    re_ /= other.re_;
    im_ /= other.re_;
  } else {
    const Rational d = modulus_squared(other);
    Rational re = (re_ * other.re_ + im_ * other.im_) / d;
    Rational im = (im_ * other.re_ - re_ * other.im_) / d;
    re_ = std::move(re);
    im_ = std::move(im);
  }
  if (other.is_complex()) field_ = Field::complex;
  return *this;
}

Scalar Scalar::inverse() const {
  Scalar one(1L);
  if (is_complex()) one = Scalar::complex(1, 0);
  return one / *this;
}

std::string Scalar::to_string() const {
  if (!is_complex()) return wshift::to_string(re_);
  std::string out = wshift::to_string(re_);
  if (sgn(im_) < 0) {
    out += "-" + wshift::to_string(Rational(-im_));
  } else {
    out += "+" + wshift::to_string(im_);
  }
  out += "*i";
  return out;
}

Scalar Scalar::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty scalar");
  if (s.back() != 'i') return Scalar(parse_rational(s));

  // Imaginary term at the end: [real] (+|-) [coef[*]] i
  s.remove_suffix(1);
  const bool starred = !s.empty() && s.back() == '*';
  if (starred) s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t pos = s.size(); pos-- > 1;) {
    if (s[pos] == '+' || s[pos] == '-') {
      split = pos;
      break;
    }
  }
  std::string_view real_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view imag_part = split == std::string_view::npos ? s : s.substr(split);
  imag_part = trim(imag_part);
  Rational im;
  if (starred && (imag_part.empty() || imag_part == "+" || imag_part == "-")) {
    throw ParseError("missing coefficient before '*i' in '" + std::string(text) + "'");
  }
  if (imag_part.empty() || imag_part == "+") {
    im = 1;
  } else if (imag_part == "-") {
    im = -1;
  } else {
    if (imag_part.front() == '+') imag_part.remove_prefix(1);
    im = parse_rational(imag_part);
  }
  Rational re = real_part.empty() ? Rational(0) : parse_rational(real_part);
  if (split != std::string_view::npos && trim(real_part).empty()) {
    throw ParseError("malformed complex scalar '" + std::string(text) + "'");
  }
  return Scalar::complex(std::move(re), std::move(im));
}

std::optional<Scalar> field_op(const Scalar& a, const Scalar& b, FieldOp op) {
  switch (op) {
    case FieldOp::add:
      return a + b;
    case FieldOp::sub:
      return a - b;
    case FieldOp::mul:
      return a * b;
    case FieldOp::div:
      if (b.is_zero()) return std::nullopt;
      return a / b;
  }
  return std::nullopt;
}

Rational modulus_squared(const Scalar& z) {
  return z.re() * z.re() + z.im() * z.im();
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  auto [num, num_exact] = integer_root(q.get_num(), 2);
  if (!num_exact) return std::nullopt;
  auto [den, den_exact] = integer_root(q.get_den(), 2);
  if (!den_exact) return std::nullopt;
  return canonical(Rational(num, den));
}

Interval root_interval(const Rational& q, unsigned long n, unsigned precision) {
  if (q < 0) throw Error("root of a negative rational");
  if (n == 0) throw Error("zeroth root");
  if (n == 1 || sgn(q) == 0) return {q, q};
  auto [num_root, num_exact] = integer_root(q.get_num(), n);
  auto [den_root, den_exact] = integer_root(q.get_den(), n);
  if (num_exact && den_exact) {
    Rational r = canonical(Rational(num_root, den_root));
    return {r, r};
  }
  // q^(1/n) = (num * den^(n-1))^(1/n) / den, scaled by 2^precision.
  Integer den_pow;
  mpz_pow_ui(den_pow.get_mpz_t(), q.get_den().get_mpz_t(), n - 1);
  Integer scaled = q.get_num() * den_pow;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(n) * precision);
  auto [r, exact] = integer_root(scaled, n);
  Integer scale = q.get_den();
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), precision);
  Rational lo = canonical(Rational(r, scale));
  if (exact) return {lo, lo};
  Rational hi = canonical(Rational(r + 1, scale));
  return {lo, hi};
}

ModulusInterval modulus_interval(const Scalar& z, unsigned precision) {
  if (z.is_real_valued()) {
    Rational m = abs(z.re());
    return {m, m};
  }
  // Width 2^-precision from root_interval already satisfies the relative
  // contract since max(hi, 1) >= 1.
  return root_interval(modulus_squared(z), 2, precision);
}

std::strong_ordering compare_modulus(const Scalar& a, const Scalar& b) {
  const int c = cmp(modulus_squared(a), modulus_squared(b));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
  return Rational(num, den);  // already coprime
}

Scalar pow(const Scalar& base, unsigned long exponent) {
  if (base.is_real_valued()) {
    Rational r = pow(base.re(), exponent);
    return base.is_complex() ? Scalar::complex(std::move(r), 0) : Scalar(std::move(r));
  }
  Scalar result = Scalar::complex(1, 0);
  Scalar square = base;
  while (exponent != 0) {
    if (exponent & 1UL) result *= square;
    exponent >>= 1;
    if (exponent != 0) square *= square;
  }
  return result;
}

Rational pow2_inverse(unsigned bits) {
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  return Rational(Integer(1), den);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(^\s*([+-]?[0-9]+)(?:\s*/\s*([0-9]+))?\s*$)");
  const std::string s(text);
  std::smatch match;
  if (!std::regex_match(s, match, pattern)) {
    throw ParseError("malformed rational '" + s + "'");
  }
  std::string num = match[1].str();
  if (num.front() == '+') num.erase(0, 1);
  Integer n(num, 10);
  Integer d = 1;
  if (match[2].matched) {
    d = Integer(match[2].str(), 10);
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  }
  return canonical(Rational(n, d));
}

}  // namespace wshift
