#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sst/graph.hpp"

namespace sst {

enum class Dialect { json_like, mixed_markup };

/// One tuple slot: the ordinal of a region among its siblings and the glyph
/// that opened it ("", "{", "[", or "<tag>").
struct Slot {
  std::uint32_t ordinal = 0;
  std::string opener;

  bool operator==(const Slot&) const = default;
};

/// Spanning-tree address of a region. Slot 0 is the top-level section and
/// never carries an opener; once a slot is (0, none) every deeper one is too.
struct RegionCoord {
  std::vector<Slot> slots;

  /// Number of populated slots.
  std::size_t depth() const;
  /// The enclosing region's coordinate (deepest populated slot cleared).
  RegionCoord parent() const;
  /// "(2,4{,2{,1[,1{)"
  std::string compact() const;

  bool operator==(const RegionCoord&) const = default;
};

/// A region and the tokens read inside it, in stream order.
struct Region {
  RegionCoord coord;
  std::vector<std::string> tokens;

  bool operator==(const Region&) const = default;
};

/// A token with its region and its "proper time" position in that region.
struct TokenEvent {
  RegionCoord region;
  std::size_t index = 0;
  std::string token;

  bool operator==(const TokenEvent&) const = default;
};

inline constexpr std::size_t kDefaultSlotWidth = 5;
inline constexpr const char* kEndSentinel = "@";

/// Splits a document into addressed regions.
///
/// Opening a `{`, `[` (or `<tag>` in mixed markup) starts a child region at
/// the next slot and, if anything had been read in the current region,
/// advances the current slot's ordinal first; a region left before anything
/// was read in it is dropped. Closing returns to the parent slot with a fresh
/// ordinal. Commas and whitespace separate tokens; quoted strings keep their
/// quotes and ':' is a token. At the top level a blank line after tokens also
/// starts a new section. When the stream ends at the top level, a final
/// section holding the single token "@" is appended.
///
/// json_like rejects unclosed delimiters; mixed_markup tolerates unclosed
/// brackets at end of stream (prose braces) and then omits the sentinel.
/// Throws depth_exceeded when nesting needs more than `width` slots and
/// parse on unbalanced or mismatched delimiters.
std::vector<Region> coordinatize(std::string_view input, Dialect dialect,
                                 std::size_t width = kDefaultSlotWidth);

std::vector<TokenEvent> token_events(const std::vector<Region>& regions);

/// The listing layout: a blank line, a header per region, then one
/// " - path/proper time location[i](token)" line per token.
std::string render_regions(const std::vector<Region>& regions);

/// "Dimension/Region ( 2,  4{,  2{,  1[,  1{, )  -> "
std::string render_header(const RegionCoord& coord);

/// Collapses whitespace runs to one space and trims the ends.
std::string normalize_whitespace(std::string_view text);

/// Turns a coordinatized document into concepts: one per region (named
/// "<doc>:<coord>"), parent --contains--> child edges, and every token
/// --is expressed by--> its region. Returns concepts plus edges added.
std::size_t doc_to_graph(const std::vector<Region>& regions, Graph& graph, std::string_view doc_name);

inline constexpr const char* kRegionContainsAlias = "contains";
inline constexpr const char* kTokenExpressedAlias = "is expressed by";

}  // namespace sst
