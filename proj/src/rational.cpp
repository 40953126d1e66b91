#include "smqka/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace smqka {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  auto integer = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    }
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(integer(text.substr(0, slash)), integer(text.substr(slash + 1)));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool negative = !whole.empty() && whole.front() == '-';
    const std::int64_t w = (whole.empty() || whole == "-") ? 0 : integer(whole);
    const std::int64_t f = frac.empty() ? 0 : integer(frac);
    const std::int64_t magnitude = (w < 0 ? -w : w) * scale + f;
    return Rational(negative ? -magnitude : magnitude, scale);
  }
  return Rational(integer(text));
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("division by zero rational");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

}  // namespace smqka
