#include "sst/types.hpp"

#include <algorithm>
#include <cctype>

#include "sst/error.hpp"

namespace sst {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::not_found: return "not found";
    case ErrorKind::conflict: return "conflict";
    case ErrorKind::unknown_alias: return "unknown alias";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::depth_exceeded: return "depth exceeded";
    case ErrorKind::io: return "i/o error";
  }
  return "error";
}

const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::near: return "near";
    case Kind::follows: return "follows";
    case Kind::contains: return "contains";
    case Kind::expresses: return "expresses";
  }
  return "?";
}

const char* to_string(Direction direction) {
  return direction == Direction::forward ? "fwd" : "recip";
}

std::optional<Kind> parse_kind(std::string_view text) {
  const std::string t = normalize_token(text);
  if (t == "near") return Kind::near;
  if (t == "follows") return Kind::follows;
  if (t == "contains") return Kind::contains;
  if (t == "expresses") return Kind::expresses;
  return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view text) {
  const std::string t = normalize_token(text);
  if (t == "fwd" || t == "forward") return Direction::forward;
  if (t == "recip" || t == "reciprocal") return Direction::reciprocal;
  return std::nullopt;
}

std::string to_string(STType t) {
  std::string out = to_string(t.kind);
  if (t.kind != Kind::near) {
    out += '/';
    out += to_string(t.direction);
  }
  if (t.negated) out += "/neg";
  return out;
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::auto_calibrated: return "auto_calibrated";
    case Provenance::observed_correlation: return "observed_correlation";
    case Provenance::reported: return "reported";
    case Provenance::reported_calibration: return "reported_calibration";
    case Provenance::reported_encapsulation: return "reported_encapsulation";
    case Provenance::co_activation: return "co_activation";
    case Provenance::inferred: return "inferred";
  }
  return "?";
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  for (auto p : {Provenance::auto_calibrated, Provenance::observed_correlation,
                 Provenance::reported, Provenance::reported_calibration,
                 Provenance::reported_encapsulation, Provenance::co_activation,
                 Provenance::inferred}) {
    if (text == to_string(p)) return p;
  }
  return std::nullopt;
}

std::string trim(std::string_view text) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return std::string(text);
}

std::string normalize_token(std::string_view text) {
  std::string out = trim(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace sst
