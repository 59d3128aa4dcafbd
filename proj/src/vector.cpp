#include "wshift/vector.hpp"
#include "text.hpp"

#include <cctype>
#include <charconv>

namespace wshift {

using detail::trim;

namespace {

void check_index(Index k) {
  if (k == 0) throw Error("basis indices start at 1");
}

}  // namespace

CoordVector CoordVector::basis(Index k) {
  check_index(k);
  CoordVector v;
  v.coords_.emplace(k, Scalar(1L));
  return v;
}

Scalar CoordVector::coordinate(Index k) const {
  check_index(k);
  auto it = coords_.find(k);
  return it == coords_.end() ? Scalar() : it->second;
}

void CoordVector::set(Index k, Scalar value) {
  check_index(k);
  if (value.is_zero()) {
    coords_.erase(k);
  } else {
    coords_.insert_or_assign(k, std::move(value));
  }
}

void CoordVector::add(Index k, const Scalar& value) {
  check_index(k);
  if (value.is_zero()) return;
  auto [it, inserted] = coords_.try_emplace(k, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) coords_.erase(it);
  }
}

CoordVector& CoordVector::operator+=(const CoordVector& other) {
  for (const auto& [k, x] : other.coords_) add(k, x);
  return *this;
}

CoordVector& CoordVector::operator-=(const CoordVector& other) {
  for (const auto& [k, x] : other.coords_) add(k, -x);
  return *this;
}

CoordVector& CoordVector::operator*=(const Scalar& alpha) {
  if (alpha.is_zero()) {
    coords_.clear();
    return *this;
  }
  for (auto& entry : coords_) entry.second *= alpha;
  return *this;
}

CoordVector CoordVector::restrict_to(Index lo, Index hi) const {
  CoordVector out;
  for (auto it = coords_.lower_bound(lo); it != coords_.end() && it->first <= hi; ++it) {
    out.coords_.insert(*it);
  }
  return out;
}

std::string CoordVector::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, x] : coords_) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(k);
    out += ": ";
    out += x.to_string();
  }
  out += "}";
  return out;
}

CoordVector CoordVector::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    throw ParseError("vector literal must be enclosed in braces: '" + std::string(text) + "'");
  }
  s = trim(s.substr(1, s.size() - 2));
  CoordVector v;
  while (!s.empty()) {
    const std::size_t comma = s.find(',');
    std::string_view entry = trim(s.substr(0, comma));
    s = comma == std::string_view::npos ? std::string_view{} : trim(s.substr(comma + 1));
    const std::size_t colon = entry.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("vector entry needs 'index: value': '" + std::string(entry) + "'");
    }
    std::string_view key = trim(entry.substr(0, colon));
    Index k = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
    if (ec != std::errc() || ptr != key.data() + key.size() || k == 0) {
      throw ParseError("bad vector index '" + std::string(key) + "'");
    }
    if (v.coords_.count(k) != 0) {
      throw ParseError("duplicate vector index " + std::to_string(k));
    }
    v.set(k, Scalar::parse(entry.substr(colon + 1)));
  }
  return v;
}

Rational l1_upper(const CoordVector& v, unsigned precision) {
  Rational total = 0;
  for (const auto& [k, x] : v) total += modulus_interval(x, precision).hi;
  return total;
}

}  // namespace wshift
