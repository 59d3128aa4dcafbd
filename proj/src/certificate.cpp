#include "wshift/certificate.hpp"

namespace wshift {

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::le:
      return "<=";
    case Relation::lt:
      return "<";
    case Relation::ge:
      return ">=";
    case Relation::gt:
      return ">";
    case Relation::eq:
      return "==";
    case Relation::unevaluable:
      return "unevaluable";
  }
  return "unevaluable";
}

Relation parse_relation(std::string_view symbol) {
  for (Relation r : {Relation::le, Relation::lt, Relation::ge, Relation::gt, Relation::eq,
                     Relation::unevaluable}) {
    if (relation_symbol(r) == symbol) return r;
  }
  throw ParseError("unknown relation '" + std::string(symbol) + "'");
}

namespace {

bool holds(int c, Relation rel) {
  switch (rel) {
    case Relation::le:
      return c <= 0;
    case Relation::lt:
      return c < 0;
    case Relation::ge:
      return c >= 0;
    case Relation::gt:
      return c > 0;
    case Relation::eq:
      return c == 0;
    case Relation::unevaluable:
      return false;
  }
  return false;
}

}  // namespace

Certificate certify_compare(std::string name, std::string claim, const Rational& lhs, Relation rel,
                            const Rational& rhs, Context context) {
  return Certificate{std::move(name), std::move(claim), to_string(lhs), rel, to_string(rhs),
                     holds(cmp(lhs, rhs), rel), std::move(context)};
}

Certificate certify_equal(std::string name, std::string claim, const CoordVector& lhs,
                          const CoordVector& rhs, Context context) {
  return Certificate{std::move(name), std::move(claim), lhs.to_string(), Relation::eq, rhs.to_string(),
                     lhs == rhs, std::move(context)};
}

Certificate certify_equal(std::string name, std::string claim, const Scalar& lhs, const Scalar& rhs,
                          Context context) {
  return Certificate{std::move(name), std::move(claim), lhs.to_string(), Relation::eq, rhs.to_string(),
                     lhs == rhs, std::move(context)};
}

Certificate certify_failure(std::string name, std::string claim, std::string reason, Context context) {
  return Certificate{std::move(name), std::move(claim), std::move(reason), Relation::unevaluable, "",
                     false, std::move(context)};
}

bool recheck(const Certificate& cert) {
  bool verdict = false;
  try {
    if (cert.relation == Relation::unevaluable) {
      verdict = false;
    } else if (!cert.lhs.empty() && cert.lhs.front() == '{') {
      if (cert.relation != Relation::eq) return false;
      verdict = CoordVector::parse(cert.lhs) == CoordVector::parse(cert.rhs);
    } else if (cert.relation == Relation::eq) {
      verdict = Scalar::parse(cert.lhs) == Scalar::parse(cert.rhs);
    } else {
      verdict = holds(cmp(parse_rational(cert.lhs), parse_rational(cert.rhs)), cert.relation);
    }
  } catch (const Error&) {
    return false;
  }
  return verdict == cert.passed;
}

bool CertificateSet::passed() const { return first_failure() == nullptr; }

const Certificate* CertificateSet::first_failure() const {
  for (const Certificate& c : items) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

std::string context_value(const Certificate& cert, std::string_view key) {
  for (const auto& [k, v] : cert.context) {
    if (k == key) return v;
  }
  return {};
}

}  // namespace wshift
