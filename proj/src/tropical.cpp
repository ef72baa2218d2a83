#include "tropatt/tropical.hpp"

#include <algorithm>
#include <cmath>

#include "tropatt/errors.hpp"
#include "tropatt/format.hpp"

namespace tropatt {

TropicalScalar::TropicalScalar(double value) : value_(value), bottom_(false) {
  if (!std::isfinite(value)) {
    throw DomainError("TropicalScalar: finite value required, got " + format_double(value));
  }
}

double TropicalScalar::value() const {
  if (bottom_) throw DomainError("TropicalScalar: bottom has no finite value");
  return value_;
}

TropicalScalar trop_add(TropicalScalar a, TropicalScalar b) noexcept {
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  return std::max(a.value(), b.value());
}

TropicalScalar trop_mul(TropicalScalar a, TropicalScalar b) {
  if (a.is_bottom() || b.is_bottom()) return TropicalScalar::bottom();
  const double sum = a.value() + b.value();
  if (!std::isfinite(sum)) {
    throw DomainError("trop_mul: sum " + format_double(a.value()) + " + " +
                      format_double(b.value()) + " leaves the finite range");
  }
  return sum;
}

bool trop_leq(TropicalScalar a, TropicalScalar b) noexcept {
  return trop_add(a, b) == b;
}

std::string to_string(TropicalScalar a) {
  return a.is_bottom() ? "-inf" : format_double(a.value());
}

TropicalScalar parse_tropical(std::string_view text) {
  if (text == "-inf") return TropicalScalar::bottom();
  const auto value = parse_double(text);
  if (!value || !std::isfinite(*value)) {
    throw SchemaError("expected \"-inf\" or a decimal literal, got \"" + std::string(text) + "\"");
  }
  return *value;
}

}  // namespace tropatt
