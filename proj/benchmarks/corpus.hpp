#pragma once

#include <fstream>
#include <sstream>
#include <string>

namespace nnn::bench {

inline const std::string& corpus_text() {
  static const std::string text = [] {
    std::ifstream in(NNN_BENCH_CORPUS, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }();
  return text;
}

}  // namespace nnn::bench
