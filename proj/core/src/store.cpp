#include "nnn/store.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <system_error>

#include "nnn/xmlio.hpp"

namespace nnn {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kCacheSchema = 1;

bool has_suffix(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

[[noreturn]] void io_error(const fs::path& p, const std::string& what) {
  throw DiagnosticError(make_diagnostic(codes::io, "/", p.string() + ": " + what));
}

json entry_to_json(const RepoEntry& e) {
  json blocks = json::array();
  for (auto b : e.blocks) blocks.push_back(std::string(to_string(b)));
  return {{"title", e.title},
          {"version", e.version},
          {"status", std::string(to_string(e.status))},
          {"nic_labels", e.nic_labels},
          {"noc_labels", e.noc_labels},
          {"blocks", blocks}};
}

std::optional<RepoEntry> entry_from_json(const json& j, const fs::path& path) {
  try {
    RepoEntry e;
    e.path = path;
    e.title = j.at("title").get<std::string>();
    e.version = j.at("version").get<std::string>();
    auto status = parse_validation_status(j.at("status").get<std::string>());
    if (!status) return std::nullopt;
    e.status = *status;
    e.nic_labels = j.at("nic_labels").get<std::vector<std::string>>();
    e.noc_labels = j.at("noc_labels").get<std::vector<std::string>>();
    for (const auto& b : j.at("blocks")) {
      auto block = parse_block(b.get<std::string>());
      if (!block) return std::nullopt;
      e.blocks.insert(*block);
    }
    return e;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

struct FileStamp {
  std::uintmax_t size = 0;
  long long mtime = 0;
};

std::optional<FileStamp> stamp(const fs::path& p) {
  std::error_code ec;
  FileStamp s;
  s.size = fs::file_size(p, ec);
  if (ec) return std::nullopt;
  auto t = fs::last_write_time(p, ec);
  if (ec) return std::nullopt;
  s.mtime = static_cast<long long>(t.time_since_epoch().count());
  return s;
}

json load_cache(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return json::object();
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("schema_version", 0) != kCacheSchema ||
      !j.contains("files") || !j["files"].is_object()) {
    return json::object();
  }
  return j["files"];
}

void save_cache(const fs::path& file, const json& files) {
  const json doc = {{"schema_version", kCacheSchema}, {"files", files}};
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;  // cache is optional
    out << doc.dump(2) << '\n';
    if (!out) return;
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace

RepoEntry make_entry(const fs::path& path, const GuidelineDocument& doc) {
  RepoEntry e;
  e.path = path;
  e.title = doc.meta.title;
  e.version = doc.meta.version_id;
  e.status = doc.meta.validation_status;
  e.nic_labels = doc.body.tasks.nic_labels;
  e.noc_labels = doc.body.outcomes.noc_labels;
  for (const auto& [b, paths] : detect_blocks(doc)) {
    if (!paths.empty()) e.blocks.insert(b);
  }
  return e;
}

IndexResult build_index(const fs::path& dir, const IndexOptions& opts) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) io_error(dir, "not a readable directory");

  std::vector<fs::path> files;
  fs::directory_iterator it(dir, ec);
  if (ec) io_error(dir, ec.message());
  for (; it != fs::directory_iterator(); it.increment(ec)) {
    if (ec) io_error(dir, ec.message());
    const auto& p = it->path();
    if (has_suffix(p.filename().string(), ".nnn.xml") && it->is_regular_file(ec)) files.push_back(p);
  }
  std::sort(files.begin(), files.end());

  const fs::path cache_file = dir / kIndexCacheFile;
  const json cached = opts.use_cache ? load_cache(cache_file) : json::object();
  json fresh = json::object();

  IndexResult result;
  for (const auto& p : files) {
    const std::string name = p.filename().string();
    const auto st = stamp(p);
    if (opts.use_cache && st && cached.contains(name)) {
      const json& c = cached[name];
      if (c.value("size", std::uintmax_t{0}) == st->size && c.value("mtime", 0LL) == st->mtime &&
          c.contains("entry")) {
        if (auto e = entry_from_json(c["entry"], p)) {
          fresh[name] = c;
          result.index.entries.push_back(std::move(*e));
          continue;
        }
      }
    }

    std::ifstream in(p, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    if (!in && !in.eof()) {
      result.diagnostics.push_back(make_diagnostic(codes::io, "/", name + ": cannot read file"));
      continue;
    }
    auto parsed = parse_document(text.str(), ParseMode::lenient);
    if (!parsed.document) {
      for (auto d : parsed.diagnostics) {
        if (d.severity != Severity::error) continue;
        d.message = name + ": " + d.message;
        result.diagnostics.push_back(std::move(d));
      }
      continue;
    }
    RepoEntry e = make_entry(p, *parsed.document);
    if (st) fresh[name] = {{"size", st->size}, {"mtime", st->mtime}, {"entry", entry_to_json(e)}};
    result.index.entries.push_back(std::move(e));
  }

  std::stable_sort(result.index.entries.begin(), result.index.entries.end(),
                   [](const RepoEntry& a, const RepoEntry& b) {
                     if (a.title != b.title) return a.title < b.title;
                     return a.path < b.path;
                   });
  if (opts.use_cache && fresh != cached) save_cache(cache_file, fresh);
  return result;
}

std::vector<RepoEntry> find(const RepoIndex& index, const Query& q) {
  std::vector<RepoEntry> out;
  const std::string title = q.title ? lower(*q.title) : std::string();
  for (const auto& e : index.entries) {
    if (q.title && lower(e.title) != title) continue;
    if (q.label) {
      const bool hit = std::find(e.nic_labels.begin(), e.nic_labels.end(), *q.label) != e.nic_labels.end() ||
                       std::find(e.noc_labels.begin(), e.noc_labels.end(), *q.label) != e.noc_labels.end();
      if (!hit) continue;
    }
    if (q.block && e.blocks.count(*q.block) == 0) continue;
    out.push_back(e);
  }
  return out;
}

}  // namespace nnn
