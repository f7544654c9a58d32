#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "sst/context.hpp"
#include "sst/graph.hpp"

namespace sst {

/// Everything a store file holds.
struct KnowledgeBase {
  Graph graph;
  ContextState context;

  bool operator==(const KnowledgeBase&) const = default;
};

/// The built-in alias table: forward and reciprocal names for the four
/// irreducible kinds, plus the four negations.
void install_seed_aliases(Graph& graph);

/// One JSON object per line, ordered meta, concept, alias, assoc, context and
/// by id within a kind, so equal stores serialize to equal bytes.
std::string serialize(const KnowledgeBase& kb);
/// Inverse of serialize(). Throws parse with the offending line number.
KnowledgeBase deserialize(std::string_view text);

/// Writes via a temporary file and an atomic rename. Returns the record count.
std::size_t save(const KnowledgeBase& kb, const std::filesystem::path& path);
KnowledgeBase load(const std::filesystem::path& path);

/// Exclusive advisory lock on "<store>.lock" held for the object's lifetime.
class StoreLock {
 public:
  explicit StoreLock(const std::filesystem::path& store);
  ~StoreLock();
  StoreLock(const StoreLock&) = delete;
  StoreLock& operator=(const StoreLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace sst
