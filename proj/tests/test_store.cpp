#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "sst/annotations.hpp"
#include "sst/error.hpp"
#include "sst/store.hpp"

using namespace sst;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sst_store_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KnowledgeBase sample() {
  KnowledgeBase kb;
  kb.graph = sst::testing::jane_graph();
  sst::testing::link(kb.graph, "Hot", "characterizes", "Spain", 0.4, {"weather", "summer"});
  kb.graph.remove_concept(kb.graph.add_concept("ghost"));
  kb.graph.clock() = tick(kb.graph.clock());
  kb.context = observe(observe({}, {"weather"}, 0.5), {"bakery"}, 0.5);
  return kb;
}

}  // namespace

TEST_CASE("an empty store is a single meta record") {
  const fs::path p = scratch("empty.jsonl");
  CHECK(save(KnowledgeBase{}, p) == 1);
  const std::string text = read_all(p);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  CHECK(text.find("\"meta\"") != std::string::npos);
  CHECK(load(p) == KnowledgeBase{});
}

TEST_CASE("save and load round-trip byte for byte") {
  const KnowledgeBase kb = sample();
  const fs::path p = scratch("sample.jsonl");
  const std::size_t records = save(kb, p);
  CHECK(records == 1 + kb.graph.concept_count() + kb.graph.aliases().size() + kb.graph.edge_count() +
                       kb.context.entries.size());
  const KnowledgeBase back = load(p);
  CHECK(back == kb);
  CHECK(back.graph.now() == kb.graph.now());
  CHECK(back.graph.next_concept_id() == kb.graph.next_concept_id());

  const fs::path again = scratch("sample2.jsonl");
  save(back, again);
  CHECK(read_all(p) == read_all(again));
  CHECK(serialize(back) == serialize(kb));
  CHECK_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST_CASE("truncated and corrupt stores are rejected with a line number") {
  const std::string text = serialize(sample());
  auto message = [](std::string_view t) -> std::string {
    try {
      deserialize(t);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::parse);
      return e.what();
    }
    return "";
  };
  const std::size_t lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  const std::string cut = text.substr(0, text.size() - 7);
  CHECK(message(cut).rfind("line " + std::to_string(lines) + ":", 0) == 0);

  std::string garbled = text;
  garbled.insert(text.find('\n') + 1, "{not json\n");
  CHECK(message(garbled).rfind("line 2:", 0) == 0);

  CHECK(message("").rfind("line 1:", 0) == 0);
  CHECK(message(text.substr(text.find('\n') + 1)).rfind("line 1:", 0) == 0);
  CHECK_THROWS_AS(load(scratch("missing.jsonl")), Error);
}

TEST_CASE("store lock is exclusive per process lifetime of the object") {
  const fs::path p = scratch("locked.jsonl");
  {
    StoreLock lock(p);
    CHECK(fs::exists(p.string() + ".lock"));
  }
  StoreLock again(p);
}
