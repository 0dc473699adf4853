#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "growthbound/factor_graph.hpp"

namespace growthbound {

// On-disk graph cache, one file per TaskSpec. Each file is a preamble line
// `growthbound-graph v<version> crc32=<hex>` followed by the serialized graph;
// the CRC covers everything after the preamble. Writes go to a temporary file
// that is renamed into place. Without a usable directory the cache keeps
// graphs in memory only.
class GraphCache {
 public:
  static constexpr int kVersion = 1;

  GraphCache() = default;
  explicit GraphCache(std::optional<std::filesystem::path> dir);

  bool persistent() const noexcept { return dir_.has_value(); }
  const std::optional<std::filesystem::path>& directory() const noexcept { return dir_; }

  // File name for a spec: the key `k/a/b/strict/m/sym` with '/' -> '_'.
  static std::string file_name(const TaskSpec& spec);

  std::optional<FactorGraph> load(const TaskSpec& spec);
  void store(const FactorGraph& g);
  // load(), else build_graph() followed by store().
  FactorGraph get_or_build(const TaskSpec& spec);

  // Checks every cache file in the directory; returns the names that fail.
  std::vector<std::string> verify_all() const;

  // Human-readable notes: checksum failures, fallbacks to memory.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  static std::string encode(const FactorGraph& g);
  // Throws Error on bad preamble, version or checksum.
  static FactorGraph decode(std::string_view text, const TaskSpec& defaults = {});

 private:
  std::optional<std::filesystem::path> dir_;
  std::map<std::string, std::shared_ptr<const FactorGraph>> memory_;
  std::vector<std::string> warnings_;
};

}  // namespace growthbound
