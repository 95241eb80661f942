#include "ivote/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

#include "ivote/error.hpp"

namespace ivote {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v, const char* op) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::overflow, std::string("rational ") + op + " exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Reduces num/den (den != 0) and narrows back to 64 bits.
void reduce_into(Wide num, Wide den, std::int64_t& out_num, std::int64_t& out_den, const char* op) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  out_num = narrow(num, op);
  out_den = narrow(den, op);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::invalid_rational, "zero denominator");
  reduce_into(num, den, num_, den_, "construction");
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = narrow(-static_cast<Wide>(num_), "negation");
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    reduce_into(static_cast<Wide>(num_) + rhs.num_, den_, num_, den_, "addition");
    return *this;
  }
  Wide g = std::gcd(den_, rhs.den_);
  Wide lhs_scale = rhs.den_ / g;
  Wide rhs_scale = den_ / g;
  Wide num = static_cast<Wide>(num_) * lhs_scale + static_cast<Wide>(rhs.num_) * rhs_scale;
  Wide den = static_cast<Wide>(den_) * lhs_scale;
  reduce_into(num, den, num_, den_, "addition");
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  Wide num = static_cast<Wide>(num_) * rhs.num_;
  Wide den = static_cast<Wide>(den_) * rhs.den_;
  reduce_into(num, den, num_, den_, "multiplication");
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw Error(ErrorKind::invalid_rational, "division by zero");
  Wide num = static_cast<Wide>(num_) * rhs.den_;
  Wide den = static_cast<Wide>(den_) * rhs.num_;
  reduce_into(num, den, num_, den_, "division");
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  // Denominators are positive, so cross-multiplication preserves order; 128 bits cannot overflow.
  Wide l = static_cast<Wide>(lhs.num_) * rhs.den_;
  Wide r = static_cast<Wide>(rhs.num_) * lhs.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto bad = [&](const char* why) {
    return Error(ErrorKind::invalid_rational, "\"" + std::string(text) + "\": " + why);
  };
  auto parse_int = [&](std::string_view part, bool allow_sign) {
    if (part.empty()) throw bad("empty component");
    if (!allow_sign && (part.front() == '-' || part.front() == '+')) throw bad("denominator must be a positive integer");
    if (part.front() == '+') throw bad("unexpected '+'");
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec == std::errc::result_out_of_range) throw bad("component out of range");
    if (ec != std::errc() || ptr != part.data() + part.size()) throw bad("not an integer");
    return value;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, true));
  std::int64_t num = parse_int(text.substr(0, slash), true);
  std::int64_t den = parse_int(text.substr(slash + 1), false);
  if (den == 0) throw bad("zero denominator");
  return Rational(num, den);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace ivote
