#include "gglab/dyadic.hpp"

#include <charconv>
#include <cstdlib>

#include "gglab/errors.hpp"

namespace gglab {

namespace {

// Bring both operands to a common exponent.
void align(std::int64_t& an, unsigned ae, std::int64_t& bn, unsigned be, unsigned& e) {
  e = ae > be ? ae : be;
  an <<= (e - ae);
  bn <<= (e - be);
}

}  // namespace

void Dyadic::normalize() {
  if (inf_) return;
  while (exp_ > 0 && (num_ % 2) == 0) {
    num_ /= 2;
    --exp_;
  }
  if (num_ == 0) exp_ = 0;
}

Dyadic Dyadic::from_halves(HalfUnits h) {
  if (!is_finite(h)) return infinity();
  return fraction(h, 1);
}

Dyadic Dyadic::fraction(std::int64_t numerator, unsigned exponent) {
  Dyadic d;
  d.num_ = numerator;
  d.exp_ = exponent;
  d.normalize();
  return d;
}

Dyadic Dyadic::infinity() {
  Dyadic d;
  d.inf_ = true;
  return d;
}

Dyadic Dyadic::parse(std::string_view text) {
  if (text == "inf") return infinity();
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) throw InputError("empty length literal");
  std::int64_t value = 0;
  if (!int_part.empty()) {
    auto [p, ec] = std::from_chars(int_part.data(), int_part.data() + int_part.size(), value);
    if (ec != std::errc{} || p != int_part.data() + int_part.size())
      throw InputError("malformed length literal '" + std::string(text) + "'");
  }
  // A terminating decimal is dyadic iff its fractional digits are a sum of
  // powers of 1/2; multiply by 2 until the fraction vanishes.
  Dyadic result(value);
  if (!frac_part.empty()) {
    std::int64_t frac = 0;
    std::int64_t scale = 1;
    for (char c : frac_part) {
      if (c < '0' || c > '9') throw InputError("malformed length literal '" + std::string(text) + "'");
      frac = frac * 10 + (c - '0');
      scale *= 10;
      if (scale > 1'000'000'000'000LL) throw InputError("length literal too precise");
    }
    unsigned e = 0;
    std::int64_t f = frac;
    while (f % scale != 0) {
      f *= 2;
      ++e;
      if (e > 40) throw InputError("length literal '" + std::string(text) + "' is not dyadic");
    }
    result = result + fraction(f / scale, e);
  }
  return negative ? -result : result;
}

HalfUnits Dyadic::to_halves() const {
  if (inf_) return kInfiniteHalves;
  if (exp_ > 1) throw DomainError("value " + to_string() + " is not a multiple of 1/2");
  return static_cast<HalfUnits>(exp_ == 1 ? num_ : num_ * 2);
}

double Dyadic::to_double() const {
  if (inf_) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(std::int64_t{1} << exp_);
}

std::string Dyadic::to_string() const {
  if (inf_) return "inf";
  if (exp_ == 0) return std::to_string(num_);
  const bool negative = num_ < 0;
  const std::int64_t mag = negative ? -num_ : num_;
  const std::int64_t den = std::int64_t{1} << exp_;
  std::string out = (negative ? "-" : "") + std::to_string(mag / den) + ".";
  std::int64_t rem = mag % den;
  // 1/2^k has exactly k decimal digits.
  for (unsigned i = 0; i < exp_; ++i) {
    rem *= 10;
    out.push_back(static_cast<char>('0' + rem / den));
    rem %= den;
  }
  return out;
}

Dyadic Dyadic::half() const {
  if (inf_) return *this;
  return fraction(num_, exp_ + 1);
}

Dyadic Dyadic::operator-() const {
  if (inf_) throw DomainError("negating infinity");
  return fraction(-num_, exp_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.inf_ || b.inf_) return Dyadic::infinity();
  std::int64_t an = a.num_, bn = b.num_;
  unsigned e = 0;
  align(an, a.exp_, bn, b.exp_, e);
  return Dyadic::fraction(an + bn, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  if (b.inf_) throw DomainError("subtracting infinity");
  if (a.inf_) return a;
  return a + (-b);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.inf_ || b.inf_) return Dyadic::infinity();
  return Dyadic::fraction(a.num_ * b.num_, a.exp_ + b.exp_);
}

bool operator==(const Dyadic& a, const Dyadic& b) {
  if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
  return a.num_ == b.num_ && a.exp_ == b.exp_;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  if (a.inf_ || b.inf_) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  std::int64_t an = a.num_, bn = b.num_;
  unsigned e = 0;
  align(an, a.exp_, bn, b.exp_, e);
  return an <=> bn;
}

Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }
Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }

}  // namespace gglab
