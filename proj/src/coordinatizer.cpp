#include "sst/coordinatizer.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "sst/error.hpp"

namespace sst {

std::size_t RegionCoord::depth() const {
  std::size_t d = 0;
  while (d < slots.size() && slots[d].ordinal != 0) ++d;
  return d;
}

RegionCoord RegionCoord::parent() const {
  RegionCoord p = *this;
  const std::size_t d = depth();
  if (d > 0) p.slots[d - 1] = Slot{};
  return p;
}

std::string RegionCoord::compact() const {
  std::string out = "(";
  const std::size_t n = std::max<std::size_t>(depth(), 1);
  for (std::size_t i = 0; i < n && i < slots.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(slots[i].ordinal) + slots[i].opener;
  }
  return out + ")";
}

std::string render_header(const RegionCoord& coord) {
  std::string out = "Dimension/Region (";
  for (const Slot& s : coord.slots) {
    out += ' ';
    out += std::to_string(s.ordinal);
    out += s.opener;
    out += ", ";
  }
  return out + ")  -> ";
}

std::string render_regions(const std::vector<Region>& regions) {
  std::string out;
  for (const Region& r : regions) {
    out += '\n';
    out += render_header(r.coord);
    out += '\n';
    for (std::size_t i = 0; i < r.tokens.size(); ++i) {
      out += " - path/proper time location[" + std::to_string(i) + "](" + r.tokens[i] + ")\n";
    }
  }
  return out;
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  bool pending = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += static_cast<char>(c);
  }
  return out;
}

std::vector<TokenEvent> token_events(const std::vector<Region>& regions) {
  std::vector<TokenEvent> out;
  for (const Region& r : regions) {
    for (std::size_t i = 0; i < r.tokens.size(); ++i) out.push_back(TokenEvent{r.coord, i, r.tokens[i]});
  }
  return out;
}

namespace {

struct Tag {
  std::string name;
  bool closing = false;
  std::size_t length = 0;
};

bool tag_char(unsigned char c, bool first) {
  if (std::isalpha(c) || c == '_') return true;
  return !first && (std::isdigit(c) || c == '-' || c == '.' || c == ':');
}

/// `<name>` or `</name>` starting at `pos`.
std::optional<Tag> match_tag(std::string_view in, std::size_t pos) {
  if (pos >= in.size() || in[pos] != '<') return std::nullopt;
  std::size_t i = pos + 1;
  Tag tag;
  if (i < in.size() && in[i] == '/') {
    tag.closing = true;
    ++i;
  }
  const std::size_t start = i;
  while (i < in.size() && tag_char(static_cast<unsigned char>(in[i]), i == start)) ++i;
  if (i == start || i >= in.size() || in[i] != '>') return std::nullopt;
  tag.name = std::string(in.substr(start, i - start));
  tag.length = i + 1 - pos;
  return tag;
}

class Coordinatizer {
 public:
  Coordinatizer(std::string_view in, Dialect dialect, std::size_t width)
      : in_(in), dialect_(dialect), width_(width) {
    if (width_ < 1) throw Error(ErrorKind::invalid_input, "slot width must be at least 1");
    path_.push_back(Slot{1, ""});
    // The document-start section is always listed, even when empty.
    content_ = true;
  }

  std::vector<Region> run() {
    while (pos_ < in_.size()) step();
    finish();
    return std::move(out_);
  }

 private:
  struct Open {
    std::string closer;
    std::size_t pos;
  };

  void step() {
    const unsigned char c = static_cast<unsigned char>(in_[pos_]);
    if (std::isspace(c)) {
      whitespace(c);
      return;
    }
    newlines_ = 0;
    switch (c) {
      case ',': content_ = true; ++pos_; return;
      case '{': open("{", "}"); ++pos_; return;
      case '[': open("[", "]"); ++pos_; return;
      case '}':
      case ']': close(std::string(1, static_cast<char>(c))); ++pos_; return;
      case ':': token(":"); ++pos_; return;
      case '"': quoted(); return;
      default: break;
    }
    if (c == '<' && dialect_ == Dialect::mixed_markup) {
      if (auto tag = match_tag(in_, pos_)) {
        if (tag->closing) {
          close("</" + tag->name + ">");
        } else {
          open("<" + tag->name + ">", "</" + tag->name + ">");
        }
        pos_ += tag->length;
        return;
      }
    }
    bare();
  }

  void whitespace(unsigned char c) {
    content_ = true;
    ++pos_;
    if (c != '\n') return;
    ++newlines_;
    if (newlines_ >= 2 && path_.size() == 1 && !tokens_.empty()) {
      leave();
      ++path_[0].ordinal;
      newlines_ = 0;
    }
  }

  void token(std::string text) {
    content_ = true;
    tokens_.push_back(std::move(text));
  }

  void quoted() {
    const std::size_t start = pos_;
    std::size_t i = pos_ + 1;
    while (i < in_.size() && in_[i] != '"') {
      if (in_[i] == '\\' && i + 1 < in_.size()) ++i;
      ++i;
    }
    if (i >= in_.size()) fail(ErrorKind::parse, "unterminated string", start);
    token(std::string(in_.substr(start, i + 1 - start)));
    pos_ = i + 1;
  }

  bool stops_word(std::size_t i) const {
    const unsigned char c = static_cast<unsigned char>(in_[i]);
    if (std::isspace(c)) return true;
    switch (c) {
      case ',': case '{': case '}': case '[': case ']': case ':': case '"': return true;
      default: break;
    }
    return c == '<' && dialect_ == Dialect::mixed_markup && match_tag(in_, i).has_value();
  }

  void bare() {
    const std::size_t start = pos_;
    std::size_t i = pos_ + 1;
    while (i < in_.size() && !stops_word(i)) ++i;
    token(std::string(in_.substr(start, i - start)));
    pos_ = i;
  }

  /// Ends the current region, listing it if anything was read in it.
  bool leave() {
    const bool had = content_;
    if (had) {
      Region r;
      r.coord = coord();
      r.tokens = std::move(tokens_);
      out_.push_back(std::move(r));
    }
    tokens_.clear();
    content_ = false;
    return had;
  }

  void open(std::string glyph, std::string closer) {
    const bool had = leave();
    if (path_.size() == 1 || had) ++path_.back().ordinal;
    if (path_.size() == width_) {
      fail(ErrorKind::depth_exceeded,
           "nesting deeper than " + std::to_string(width_) + " slots", pos_);
    }
    path_.push_back(Slot{1, std::move(glyph)});
    open_.push_back(Open{std::move(closer), pos_});
    newlines_ = 0;
  }

  void close(const std::string& closer) {
    if (open_.empty()) fail(ErrorKind::parse, "unbalanced '" + closer + "'", pos_);
    if (open_.back().closer != closer) {
      fail(ErrorKind::parse, "expected '" + open_.back().closer + "' but found '" + closer + "'", pos_);
    }
    leave();
    path_.pop_back();
    open_.pop_back();
    ++path_.back().ordinal;
    newlines_ = 0;
  }

  void finish() {
    if (!open_.empty()) {
      for (const Open& o : open_) {
        const bool bracket = o.closer == "}" || o.closer == "]";
        if (dialect_ == Dialect::json_like || !bracket) {
          fail(ErrorKind::parse, "unclosed delimiter, expected '" + o.closer + "'", o.pos);
        }
      }
      leave();
      return;
    }
    if (leave()) ++path_[0].ordinal;
    Region sentinel;
    sentinel.coord = coord();
    sentinel.tokens = {kEndSentinel};
    out_.push_back(std::move(sentinel));
  }

  RegionCoord coord() const {
    RegionCoord rc;
    rc.slots = path_;
    rc.slots.resize(width_);
    return rc;
  }

  [[noreturn]] void fail(ErrorKind kind, const std::string& what, std::size_t at) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < in_.size(); ++i) {
      if (in_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(kind, what + " at line " + std::to_string(line) + ", column " + std::to_string(col) +
                          " (offset " + std::to_string(at) + ")");
  }

  std::string_view in_;
  Dialect dialect_;
  std::size_t width_;
  std::size_t pos_ = 0;
  std::vector<Slot> path_;
  std::vector<Open> open_;
  std::vector<std::string> tokens_;
  bool content_ = false;
  int newlines_ = 0;
  std::vector<Region> out_;
};

void ensure_alias(Graph& g, const char* name, STType type, const char* reciprocal) {
  if (!g.find_alias(name)) g.register_alias(name, type, true, g.find_alias(reciprocal) ? "" : reciprocal);
}

}  // namespace

std::vector<Region> coordinatize(std::string_view input, Dialect dialect, std::size_t width) {
  return Coordinatizer(input, dialect, width).run();
}

std::size_t doc_to_graph(const std::vector<Region>& regions, Graph& graph, std::string_view doc_name) {
  if (regions.empty()) return 0;
  const std::string doc = trim(doc_name);
  if (doc.empty()) throw Error(ErrorKind::invalid_input, "document name is empty");
  ensure_alias(graph, kRegionContainsAlias, make_type(Kind::contains, Direction::forward), "is a part of");
  ensure_alias(graph, kTokenExpressedAlias, make_type(Kind::expresses, Direction::reciprocal), "expresses");

  const std::size_t before = graph.concept_count() + graph.edge_count();
  auto region_concept = [&](const RegionCoord& rc) { return graph.add_concept(doc + ":" + rc.compact()); };

  for (std::size_t i = 0; i < regions.size(); ++i) {
    const Region& r = regions[i];
    const bool sentinel = i + 1 == regions.size() && r.coord.depth() == 1 &&
                          r.tokens.size() == 1 && r.tokens[0] == kEndSentinel;
    if (sentinel) continue;
    RegionCoord child = r.coord;
    ConceptId child_id = region_concept(child);
    const ConceptId region_id = child_id;
    while (child.depth() > 1) {
      const RegionCoord up = child.parent();
      const ConceptId up_id = region_concept(up);
      if (!graph.find_association(up_id, kRegionContainsAlias, child_id, {})) {
        graph.associate(up_id, kRegionContainsAlias, child_id, {}, Provenance::auto_calibrated);
      }
      child = up;
      child_id = up_id;
    }
    for (const std::string& t : r.tokens) {
      const ConceptId tok = graph.add_concept(t);
      graph.associate(tok, kTokenExpressedAlias, region_id, {}, Provenance::auto_calibrated);
    }
  }
  return graph.concept_count() + graph.edge_count() - before;
}

}  // namespace sst
