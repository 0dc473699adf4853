#include "growthbound/cache.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/crc.hpp>

#include "growthbound/error.hpp"

namespace growthbound {

namespace {

std::uint32_t crc32(std::string_view bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

std::string preamble(std::uint32_t crc) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "growthbound-graph v%d crc32=%08x\n", GraphCache::kVersion, crc);
  return buf;
}

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

GraphCache::GraphCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
  if (!dir_) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir_, ec);
  if (ec || !std::filesystem::is_directory(*dir_, ec)) {
    warnings_.push_back("cache directory " + dir_->string() + " unusable, caching in memory");
    dir_.reset();
  }
}

std::string GraphCache::file_name(const TaskSpec& spec) {
  std::string key = spec.key();
  std::replace(key.begin(), key.end(), '/', '_');
  return "g" + key + ".graph";
}

std::string GraphCache::encode(const FactorGraph& g) {
  const std::string body = serialize(g);
  return preamble(crc32(body)) + body;
}

FactorGraph GraphCache::decode(std::string_view text, const TaskSpec& defaults) {
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw Error("cache file has no preamble");
  const std::string_view head = text.substr(0, nl + 1);
  const std::string_view body = text.substr(nl + 1);
  const std::string prefix = "growthbound-graph v" + std::to_string(kVersion) + " crc32=";
  if (head.substr(0, prefix.size()) != prefix) throw Error("cache file version mismatch");
  if (head != preamble(crc32(body))) throw Error("cache checksum mismatch");
  return deserialize(body, defaults);
}

std::optional<FactorGraph> GraphCache::load(const TaskSpec& spec) {
  const std::string name = file_name(spec);
  if (auto it = memory_.find(name); it != memory_.end()) return *it->second;
  if (!dir_) return std::nullopt;
  const auto text = read_file(*dir_ / name);
  if (!text) return std::nullopt;
  try {
    FactorGraph g = decode(*text, spec);
    if (g.spec().key() != spec.key()) throw Error("cache file describes a different task");
    return g;
  } catch (const std::exception& e) {
    warnings_.push_back(name + ": " + e.what() + ", rebuilding");
    return std::nullopt;
  }
}

void GraphCache::store(const FactorGraph& g) {
  const std::string name = file_name(g.spec());
  if (!dir_) {
    memory_[name] = std::make_shared<const FactorGraph>(g);
    return;
  }
  const auto target = *dir_ / name;
  const auto temp = *dir_ / (name + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << encode(g);
    if (!out) {
      warnings_.push_back("cannot write " + temp.string() + ", caching in memory");
      memory_[name] = std::make_shared<const FactorGraph>(g);
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    warnings_.push_back("cannot rename into " + target.string() + ", caching in memory");
    std::filesystem::remove(temp, ec);
    memory_[name] = std::make_shared<const FactorGraph>(g);
  }
}

FactorGraph GraphCache::get_or_build(const TaskSpec& spec) {
  if (auto g = load(spec)) {
    if (g->state_count() > spec.state_cap)
      throw ResourceError("cached graph exceeds state cap of " + std::to_string(spec.state_cap), g->state_count());
    return std::move(*g);
  }
  FactorGraph g = build_graph(spec);
  store(g);
  return g;
}

std::vector<std::string> GraphCache::verify_all() const {
  std::vector<std::string> bad;
  if (!dir_) return bad;
  std::error_code ec;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(*dir_, ec))
    if (entry.path().extension() == ".graph") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    const auto text = read_file(p);
    try {
      if (!text) throw Error("unreadable");
      decode(*text);
    } catch (const std::exception&) {
      bad.push_back(p.filename().string());
    }
  }
  return bad;
}

}  // namespace growthbound
