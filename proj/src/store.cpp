#include "sst/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sst/error.hpp"

namespace sst {

using json = nlohmann::json;

namespace {

constexpr const char* kFormat = "sst-kb";
constexpr int kVersion = 1;

struct SeedAlias {
  const char* name;
  STType type;
  const char* reciprocal;
};

json type_json(STType t) {
  return json{{"kind", to_string(t.kind)}, {"dir", to_string(t.direction)}, {"negated", t.negated}};
}

STType type_from(const json& j) {
  auto kind = parse_kind(j.at("kind").get<std::string>());
  auto dir = parse_direction(j.at("dir").get<std::string>());
  if (!kind || !dir) throw Error(ErrorKind::parse, "bad association type");
  return make_type(*kind, *dir, j.at("negated").get<bool>());
}

json meta_record(const KnowledgeBase& kb) {
  const Graph& g = kb.graph;
  return json{
      {"kind", "meta"},
      {"format", kFormat},
      {"version", kVersion},
      {"clock", {{"t", g.clock().t}, {"t_max", g.clock().t_max}}},
      {"next_concept", g.next_concept_id()},
      {"next_assoc", g.next_assoc_id()},
      {"params", {{"ell", g.params().ell}, {"beta", g.params().beta}, {"log_base", g.params().log_base}}},
      {"initial_weights",
       {{"asserted", g.initial_weights().asserted},
        {"co_activation", g.initial_weights().co_activation},
        {"inferred", g.initial_weights().inferred}}},
      {"context", {{"capacity", kb.context.capacity}, {"epsilon", kb.context.epsilon}}},
  };
}

}  // namespace

void install_seed_aliases(Graph& graph) {
  const STType near = make_type(Kind::near, Direction::forward);
  const STType follows = make_type(Kind::follows, Direction::forward);
  const STType precedes = make_type(Kind::follows, Direction::reciprocal);
  const STType contains = make_type(Kind::contains, Direction::forward);
  const STType part_of = make_type(Kind::contains, Direction::reciprocal);
  const STType expresses = make_type(Kind::expresses, Direction::forward);
  const STType expressed_by = make_type(Kind::expresses, Direction::reciprocal);

  const SeedAlias seeds[] = {
      {"is close to", near, "is close to"},
      {"approximates", near, "is equivalent to"},
      {"is connected to", near, "is connected to"},
      {"is adjacent to", near, "is adjacent to"},
      {"is correlated with", near, "is correlated with"},
      {"is similar to", near, "is similar to"},
      {"near", near, "near"},

      {"depends on", follows, "enables"},
      {"is caused by", follows, "causes"},
      {"follows", follows, "precedes"},

      {"contains", contains, "is a part of"},
      {"surrounds", contains, "inside"},
      {"generalizes", contains, "is an aspect of"},
      {"is generalized by", part_of, "generalizes"},
      {"exemplifies", part_of, "generalizes"},
      {"occupies", part_of, "contains"},
      {"is a member of", part_of, "has member"},

      {"has name or value", expresses, "is the value of property"},
      {"has property", expresses, "characterizes"},
      {"is a property of", expressed_by, "has property"},
      {"expresses", expresses, "is expressed by"},
      {"represents", expresses, "is represented by"},

      {"does not generalize", negate_type(contains), "is not generalized by"},
      {"does not lead to", negate_type(precedes), "does not follow"},
      {"does not express", negate_type(expresses), "is not expressed by"},
      {"is not close to", negate_type(near), "is not close to"},
  };
  for (const auto& s : seeds) graph.register_alias(s.name, s.type, true, s.reciprocal);
}

std::string serialize(const KnowledgeBase& kb) {
  std::string out = meta_record(kb).dump() + '\n';
  const Graph& g = kb.graph;
  for (const auto& [id, c] : g.concepts()) {
    out += json{{"kind", "concept"}, {"id", c.id}, {"name", c.name}, {"created_tick", c.created_tick}}.dump();
    out += '\n';
  }
  for (const auto& [name, a] : g.aliases()) {
    out += json{{"kind", "alias"},
                {"id", a.name},
                {"type", type_json(a.type)},
                {"propagating", a.propagating},
                {"reciprocal", a.reciprocal}}
               .dump();
    out += '\n';
  }
  for (const auto& [id, a] : g.associations()) {
    out += json{{"kind", "assoc"},
                {"id", a.id},
                {"from", a.from},
                {"to", a.to},
                {"alias", a.alias},
                {"contexts", a.contexts},
                {"weight", a.weight},
                {"last_tick", a.last_tick},
                {"provenance", to_string(a.provenance)}}
               .dump();
    out += '\n';
  }
  for (const auto& [token, w] : kb.context.entries) {
    out += json{{"kind", "context"}, {"id", token}, {"weight", w}}.dump();
    out += '\n';
  }
  return out;
}

KnowledgeBase deserialize(std::string_view text) {
  KnowledgeBase kb;
  bool seen_meta = false;
  ConceptId next_concept = 1;
  AssocId next_assoc = 1;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    const bool terminated = end != std::string_view::npos;
    if (!terminated) end = text.size();
    ++line_no;
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    try {
      if (!terminated) throw Error(ErrorKind::parse, "record is not newline-terminated (truncated file?)");
      const json j = json::parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "meta") {
        if (seen_meta) throw Error(ErrorKind::parse, "duplicate meta record");
        if (line_no != 1) throw Error(ErrorKind::parse, "meta record must come first");
        if (j.at("format").get<std::string>() != kFormat || j.at("version").get<int>() != kVersion)
          throw Error(ErrorKind::parse, "unsupported store format");
        seen_meta = true;
        Graph& g = kb.graph;
        g.clock().t = j.at("clock").at("t").get<Tick>();
        g.clock().t_max = j.at("clock").at("t_max").get<Tick>();
        if (g.clock().t_max <= 1 || g.clock().t >= g.clock().t_max)
          throw Error(ErrorKind::parse, "bad clock state");
        next_concept = j.at("next_concept").get<ConceptId>();
        next_assoc = j.at("next_assoc").get<AssocId>();
        const json& p = j.at("params");
        g.params() = LearningParams{p.at("ell").get<double>(), p.at("beta").get<double>(),
                                    p.at("log_base").get<double>()};
        validate(g.params());
        const json& w = j.at("initial_weights");
        g.initial_weights() = InitialWeights{w.at("asserted").get<double>(),
                                             w.at("co_activation").get<double>(),
                                             w.at("inferred").get<double>()};
        kb.context.capacity = j.at("context").at("capacity").get<std::size_t>();
        kb.context.epsilon = j.at("context").at("epsilon").get<double>();
        continue;
      }
      if (!seen_meta) throw Error(ErrorKind::parse, "missing meta record");
      if (kind == "concept") {
        kb.graph.restore_concept(Concept{j.at("id").get<ConceptId>(), j.at("name").get<std::string>(),
                                         j.at("created_tick").get<Tick>()});
      } else if (kind == "alias") {
        kb.graph.restore_alias(Alias{j.at("id").get<std::string>(), type_from(j.at("type")),
                                     j.at("propagating").get<bool>(),
                                     j.at("reciprocal").get<std::string>()});
      } else if (kind == "assoc") {
        auto prov = parse_provenance(j.at("provenance").get<std::string>());
        if (!prov) throw Error(ErrorKind::parse, "unknown provenance");
        Association a;
        a.id = j.at("id").get<AssocId>();
        a.from = j.at("from").get<ConceptId>();
        a.to = j.at("to").get<ConceptId>();
        a.alias = j.at("alias").get<std::string>();
        a.contexts = j.at("contexts").get<ContextSet>();
        a.weight = j.at("weight").get<double>();
        a.last_tick = j.at("last_tick").get<Tick>();
        a.provenance = *prov;
        kb.graph.restore_association(a);
      } else if (kind == "context") {
        const double w = j.at("weight").get<double>();
        if (!(w > 0.0 && w <= 1.0)) throw Error(ErrorKind::parse, "context weight out of range");
        kb.context.entries[j.at("id").get<std::string>()] = w;
      } else {
        throw Error(ErrorKind::parse, "unknown record kind '" + kind + "'");
      }
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const json::exception& e) {
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!seen_meta) throw Error(ErrorKind::parse, "line 1: missing meta record");
  try {
    kb.graph.restore_counters(next_concept, next_assoc);
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, std::string("line 1: ") + e.what());
  }
  return kb;
}

std::size_t save(const KnowledgeBase& kb, const std::filesystem::path& path) {
  const std::string text = serialize(kb);
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::io, "cannot replace " + path.string() + ": " + ec.message());
  }
  std::size_t records = 0;
  for (char c : text) records += c == '\n' ? 1 : 0;
  return records;
}

KnowledgeBase load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

StoreLock::StoreLock(const std::filesystem::path& store) {
  std::filesystem::path lock = store;
  lock += ".lock";
  fd_ = ::open(lock.c_str(), O_RDWR | O_CREAT, 0644);
  if (fd_ < 0) throw Error(ErrorKind::io, "cannot open lock file " + lock.string());
  if (::flock(fd_, LOCK_EX) != 0) {
    ::close(fd_);
    throw Error(ErrorKind::io, "cannot lock " + lock.string());
  }
}

StoreLock::~StoreLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

}  // namespace sst
