#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "semcom/lexicon.hpp"
#include "semcom/pipeline.hpp"
#include "semcom/similarity.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& rel = "") {
  return std::filesystem::path(SEMCOM_FIXTURE_DIR) / rel;
}

inline const semcom::LexicalDatabase& lexicon() {
  static const auto db = semcom::load_lexicon_dir(fixture("mini-wndb"));
  return db;
}

inline const semcom::StopwordList& stopwords() {
  static const auto sw = semcom::StopwordList::load(fixture("stopwords.txt"));
  return sw;
}

inline semcom::SharedKnowledge kb() { return {lexicon(), stopwords()}; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::uint8_t> slurp_bytes(const std::filesystem::path& p) {
  auto s = slurp(p);
  return {s.begin(), s.end()};
}

/// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0;; ++i) {
      path_ = base / ("semcom-test-" + std::to_string(::getpid()) + "-" + std::to_string(i));
      if (std::filesystem::create_directory(path_)) break;
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path write(const std::string& name, const std::string& content) const {
    auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline semcom::SynsetId sid(char pos, std::uint32_t offset) {
  return {*semcom::pos_from_char(pos), offset};
}

}  // namespace testing
