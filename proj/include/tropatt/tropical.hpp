#pragma once

#include <string>
#include <string_view>

namespace tropatt {

// Scalar of the max-plus semiring: a finite double or the distinguished
// bottom element (-inf, the additive identity). Bottom is a tagged state
// rather than an IEEE -infinity payload, so no operation on the carrier can
// produce NaN. Finite payloads are never NaN or +-inf; construction enforces
// this. Comparisons of finite values are exact.
class TropicalScalar {
 public:
  // Bottom.
  constexpr TropicalScalar() noexcept = default;

  // Finite value; throws DomainError on NaN or +-infinity.
  TropicalScalar(double value);

  static constexpr TropicalScalar bottom() noexcept { return {}; }

  constexpr bool is_bottom() const noexcept { return bottom_; }
  constexpr bool is_finite() const noexcept { return !bottom_; }

  // Finite payload; throws DomainError when bottom.
  double value() const;

  friend constexpr bool operator==(TropicalScalar a, TropicalScalar b) noexcept {
    if (a.bottom_ || b.bottom_) return a.bottom_ == b.bottom_;
    return a.value_ == b.value_;
  }

 private:
  double value_ = 0.0;
  bool bottom_ = true;
};

// a (+) b = max{a, b}, with bottom below every finite value.
TropicalScalar trop_add(TropicalScalar a, TropicalScalar b) noexcept;

// a (x) b = a + b, with bottom absorbing. Throws DomainError when the sum of
// two finite values leaves the finite double range.
TropicalScalar trop_mul(TropicalScalar a, TropicalScalar b);

// Order induced by idempotent addition: a <= b iff a (+) b = b. Total on
// this carrier.
bool trop_leq(TropicalScalar a, TropicalScalar b) noexcept;

// "-inf" for bottom, shortest round-trip decimal otherwise.
std::string to_string(TropicalScalar a);

// Accepts "-inf" and decimal literals; throws SchemaError on anything else
// (including "inf" and "nan", which are outside the carrier).
TropicalScalar parse_tropical(std::string_view text);

}  // namespace tropatt
