#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace gglab {

/// Graph distances are integer counts of half edge-lengths. Unit edges are 2,
/// cone edges are 1.
using HalfUnits = std::int32_t;
inline constexpr HalfUnits kInfiniteHalves = std::numeric_limits<HalfUnits>::max();

inline constexpr bool is_finite(HalfUnits h) { return h != kInfiniteHalves; }

/// Exact dyadic rational numerator / 2^exponent, with an infinity state.
/// Serialized as a terminating decimal ("1.25") or "inf".
class Dyadic {
 public:
  constexpr Dyadic() = default;
  constexpr Dyadic(std::int64_t integer) : num_(integer) {}  // NOLINT(implicit)

  static Dyadic from_halves(HalfUnits h);
  static Dyadic fraction(std::int64_t numerator, unsigned exponent);
  static Dyadic infinity();
  static Dyadic parse(std::string_view text);

  bool is_infinite() const { return inf_; }
  std::int64_t numerator() const { return num_; }
  unsigned exponent() const { return exp_; }

  /// Value in half units; throws if the denominator exceeds 2.
  HalfUnits to_halves() const;
  double to_double() const;
  std::string to_string() const;

  Dyadic half() const;
  Dyadic operator-() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

  friend bool operator==(const Dyadic& a, const Dyadic& b);
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  std::int64_t num_ = 0;
  unsigned exp_ = 0;
  bool inf_ = false;
};

Dyadic max(const Dyadic& a, const Dyadic& b);
Dyadic min(const Dyadic& a, const Dyadic& b);

}  // namespace gglab
