#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sst {

using ConceptId = std::uint64_t;
using AssocId = std::uint64_t;
using Tick = std::uint64_t;

/// The four irreducible spacetime association kinds.
enum class Kind : std::uint8_t { near, follows, contains, expresses };

enum class Direction : std::uint8_t { forward, reciprocal };

/// Canonical association label: kind, reading direction and polarity.
///
/// NEAR is its own reciprocal, so a NEAR type is always stored with
/// `direction == forward`; use make_type() rather than aggregate
/// initialisation when the direction comes from user input.
struct STType {
  Kind kind = Kind::near;
  Direction direction = Direction::forward;
  bool negated = false;

  auto operator<=>(const STType&) const = default;
};

constexpr STType make_type(Kind kind, Direction direction, bool negated = false) {
  if (kind == Kind::near) direction = Direction::forward;
  return STType{kind, direction, negated};
}

constexpr STType reciprocal_of(STType t) {
  if (t.kind == Kind::near) return t;
  t.direction = t.direction == Direction::forward ? Direction::reciprocal
                                                  : Direction::forward;
  return t;
}

constexpr STType negate_type(STType t) {
  t.negated = !t.negated;
  return t;
}

/// All 14 canonical labels, in a fixed order.
constexpr std::array<STType, 14> all_types() {
  std::array<STType, 14> out{};
  std::size_t i = 0;
  for (Kind k : {Kind::near, Kind::follows, Kind::contains, Kind::expresses}) {
    for (bool neg : {false, true}) {
      out[i++] = make_type(k, Direction::forward, neg);
      if (k != Kind::near) out[i++] = make_type(k, Direction::reciprocal, neg);
    }
  }
  return out;
}

const char* to_string(Kind kind);
const char* to_string(Direction direction);
std::optional<Kind> parse_kind(std::string_view text);
std::optional<Direction> parse_direction(std::string_view text);

/// e.g. "contains/recip" or "near/neg".
std::string to_string(STType t);

/// How an association entered the store.
enum class Provenance : std::uint8_t {
  auto_calibrated,
  observed_correlation,
  reported,
  reported_calibration,
  reported_encapsulation,
  co_activation,
  inferred,
};

const char* to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view text);

/// Lowercase and trim; the matching rule for context tokens.
std::string normalize_token(std::string_view text);

std::string trim(std::string_view text);

}  // namespace sst
