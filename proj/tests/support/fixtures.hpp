#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>
#include <string>

#include "nnn/xmlio.hpp"

namespace nnn::testing {

inline std::filesystem::path data_dir() { return NNN_TEST_DATA_DIR; }

inline std::filesystem::path corpus_path() { return data_dir() / "fatigue.nnn.xml"; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string corpus_text() { return read_file(corpus_path()); }

/// Leniently parsed corpus (the form every command works on).
inline GuidelineDocument corpus_document() {
  auto r = parse_document(corpus_text(), ParseMode::lenient);
  if (!r.document) throw std::runtime_error("corpus does not parse");
  return *r.document;
}

/// Fresh empty directory under the system temp dir, removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("nnn-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

}  // namespace nnn::testing
