#include "wshift/space.hpp"

#include <algorithm>

namespace wshift {

SpaceSpec SpaceSpec::lp(Rational p, unsigned precision) {
  p.canonicalize();
  if (p < 1) throw Error("l_p requires p >= 1, got " + to_string(p));
  return SpaceSpec(SpaceKind::lp, std::move(p), precision);
}

SpaceSpec SpaceSpec::c0(unsigned precision) { return SpaceSpec(SpaceKind::c0, 0, precision); }

SpaceSpec SpaceSpec::c(unsigned precision) { return SpaceSpec(SpaceKind::c, 0, precision); }

SpaceSpec SpaceSpec::parse(std::string_view text, unsigned precision) {
  if (text == "c0") return c0(precision);
  if (text == "c") return c(precision);
  if (text == "l1") return lp(1, precision);
  if (text == "l2") return lp(2, precision);
  if (text.substr(0, 3) == "lp:") {
    Rational p = parse_rational(text.substr(3));
    if (p < 1) throw ParseError("l_p requires p >= 1 in '" + std::string(text) + "'");
    return lp(std::move(p), precision);
  }
  throw ParseError("unknown space '" + std::string(text) + "' (expected l1, l2, lp:P, c0 or c)");
}

std::string SpaceSpec::name() const {
  switch (kind_) {
    case SpaceKind::c0:
      return "c0";
    case SpaceKind::c:
      return "c";
    case SpaceKind::lp:
      if (p_ == 1) return "l1";
      if (p_ == 2) return "l2";
      return "lp:" + to_string(p_);
  }
  return "?";
}

namespace {

bool within_contract(const Interval& iv, unsigned precision) {
  const Rational scale = iv.hi > 1 ? iv.hi : Rational(1);
  return iv.width() <= pow2_inverse(precision) * scale;
}

unsigned bit_length(std::size_t n) {
  unsigned bits = 0;
  while (n != 0) {
    ++bits;
    n >>= 1;
  }
  return bits;
}

// Widens a non-degenerate interval to endpoints on the grid 2^-bits.
Interval round_outward(const Interval& iv, unsigned bits) {
  if (iv.degenerate()) return iv;
  const Integer scale = Integer(1) << bits;
  Integer lo;
  Integer hi;
  const Rational lo_scaled = iv.lo * scale;
  const Rational hi_scaled = iv.hi * scale;
  mpz_fdiv_q(lo.get_mpz_t(), lo_scaled.get_num_mpz_t(), lo_scaled.get_den_mpz_t());
  mpz_cdiv_q(hi.get_mpz_t(), hi_scaled.get_num_mpz_t(), hi_scaled.get_den_mpz_t());
  return {Rational(lo, scale), Rational(hi, scale)};
}

// (sum_k |x_k|^p)^(1/p) with p = a/b, via |x|^p = (|x|^2)^(a / 2b).
Interval lp_norm(const Rational& p, const CoordVector& v, unsigned precision) {
  const unsigned long a = p.get_num().get_ui();
  const unsigned long b = p.get_den().get_ui();
  std::vector<Rational> powered;
  powered.reserve(v.support_size());
  for (const auto& [k, x] : v) powered.push_back(pow(modulus_squared(x), a));

  unsigned working = precision + 8 + bit_length(v.support_size());
  for (;;) {
    Rational sum_lo = 0;
    Rational sum_hi = 0;
    for (const Rational& q : powered) {
      const Interval term = root_interval(q, 2 * b, working);
      sum_lo += term.lo;
      sum_hi += term.hi;
    }
    Interval out{root_interval(pow(sum_lo, b), a, working).lo,
                 root_interval(pow(sum_hi, b), a, working).hi};
    // Half the budget here, at most 2^-(precision+1) more from the grid.
    if (within_contract(out, precision + 1)) {
      Interval rounded = round_outward(out, precision + 2);
      rounded.lo.canonicalize();
      rounded.hi.canonicalize();
      return rounded;
    }
    working += std::max(16U, working / 2);
  }
}

}  // namespace

EventuallyConstant c_space_embed(const CoordVector& v) {
  EventuallyConstant seq;
  seq.limit = v.coordinate(1);
  seq.sup_squared = modulus_squared(seq.limit);
  const Index top = v.max_support();
  for (Index j = 1; j + 1 <= top; ++j) {
    Scalar term = seq.limit + v.coordinate(j + 1);
    Rational m = modulus_squared(term);
    if (m > seq.sup_squared) seq.sup_squared = m;
    seq.prefix.push_back(std::move(term));
  }
  return seq;
}

NormInterval norm(const SpaceSpec& space, const CoordVector& v, unsigned precision) {
  if (v.is_zero()) return {0, 0};
  switch (space.kind()) {
    case SpaceKind::c0: {
      Rational best = 0;
      for (const auto& [k, x] : v) best = std::max(best, modulus_squared(x));
      return root_interval(best, 2, precision);
    }
    case SpaceKind::c:
      return root_interval(c_space_embed(v).sup_squared, 2, precision);
    case SpaceKind::lp:
      return lp_norm(space.p(), v, precision);
  }
  throw Error("unknown space kind");
}

}  // namespace wshift
