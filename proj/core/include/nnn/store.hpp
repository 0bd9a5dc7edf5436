#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nnn/coverage.hpp"
#include "nnn/diagnostic.hpp"
#include "nnn/model.hpp"

namespace nnn {

struct RepoEntry {
  std::filesystem::path path;
  std::string title;
  std::string version;
  ValidationStatus status = ValidationStatus::research;
  std::vector<std::string> nic_labels;
  std::vector<std::string> noc_labels;
  std::set<BuildingBlock> blocks;
  friend bool operator==(const RepoEntry&, const RepoEntry&) = default;
};

struct RepoIndex {
  std::vector<RepoEntry> entries;  // sorted by title, then path
  friend bool operator==(const RepoIndex&, const RepoIndex&) = default;
};

struct IndexResult {
  RepoIndex index;
  std::vector<Diagnostic> diagnostics;  // messages name the offending file
};

inline constexpr const char* kIndexCacheFile = ".nnn-index.json";

struct IndexOptions {
  /// Read and refresh `.nnn-index.json` in the directory. Entries are reused
  /// only when a file's size and modification time are unchanged.
  bool use_cache = false;
};

/// Indexes every `*.nnn.xml` directly inside `dir` (lenient parse). Files
/// that fail to parse contribute diagnostics and no entry. Throws
/// DiagnosticError (E-IO) when `dir` cannot be read.
IndexResult build_index(const std::filesystem::path& dir, const IndexOptions& opts = {});

struct Query {
  std::optional<std::string> title;  // case-insensitive, exact
  std::optional<std::string> label;  // NIC or NOC label, exact
  std::optional<BuildingBlock> block;
};

/// Entries satisfying every given criterion.
std::vector<RepoEntry> find(const RepoIndex& index, const Query& query);

/// Entry for one parsed document (path as given).
RepoEntry make_entry(const std::filesystem::path& path, const GuidelineDocument& doc);

}  // namespace nnn
