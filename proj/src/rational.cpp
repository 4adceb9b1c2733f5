#include "ctlab/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>

#include "ctlab/error.hpp"

namespace ctlab {

namespace {

__extension__ typedef __int128 wide;

wide gcd_wide(wide a, wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const wide r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Rational reduce(wide num, wide den) {
  if (den == 0) throw DomainError("rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr wide lo = std::numeric_limits<std::int64_t>::min() + 1;
  constexpr wide hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw RangeError("rational arithmetic overflowed 64 bits");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    if (num == std::numeric_limits<std::int64_t>::min() || den == std::numeric_limits<std::int64_t>::min()) {
      throw RangeError("rational out of range");
    }
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(const std::string& text) {
  auto bad = [&] { return InvalidArgument("cannot read '" + text + "' as a rational"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    try {
      std::size_t a = 0, b = 0;
      const long long n = std::stoll(text.substr(0, slash), &a);
      const long long d = std::stoll(text.substr(slash + 1), &b);
      if (a != slash || b != text.size() - slash - 1) throw bad();
      return Rational(n, d);
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  wide num = 0, den = 1;
  bool digits = false, dot = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '.' && !dot) {
      dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw bad();
    digits = true;
    num = num * 10 + (ch - '0');
    if (dot) den *= 10;
    if (num > (wide{1} << 100) || den > (wide{1} << 100)) throw bad();
  }
  if (!digits) throw bad();
  return reduce(neg ? -num : num, den);
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return reduce(wide{a.num_} * b.den_ + wide{b.num_} * a.den_, wide{a.den_} * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return reduce(wide{a.num_} * b.den_ - wide{b.num_} * a.den_, wide{a.den_} * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return reduce(wide{a.num_} * b.num_, wide{a.den_} * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return reduce(wide{a.num_} * b.den_, wide{a.den_} * b.num_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return wide{a.num_} * b.den_ <=> wide{b.num_} * a.den_;
}

}  // namespace ctlab
