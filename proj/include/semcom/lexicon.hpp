#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semcom {

/// WordNet part-of-speech tags. `adj_satellite` keeps its own identity but is
/// looked up together with `adj`.
enum class Pos : char {
  noun = 'n',
  verb = 'v',
  adj = 'a',
  adv = 'r',
  adj_satellite = 's',
};

std::optional<Pos> pos_from_char(char c) noexcept;
inline char to_char(Pos p) noexcept { return static_cast<char>(p); }

/// Identity of a synset: part of speech plus the 8-digit database offset.
struct SynsetId {
  Pos pos = Pos::noun;
  std::uint32_t offset = 0;

  static constexpr std::uint32_t kMaxOffset = 99'999'999;

  friend auto operator<=>(const SynsetId&, const SynsetId&) = default;
};

/// "n:00001001"
std::string to_string(const SynsetId& id);
/// Parses "p:dddddddd"; returns nullopt on any deviation from that shape.
std::optional<SynsetId> parse_synset_id(std::string_view text);

struct Synset {
  SynsetId id;
  std::vector<std::string> lemmas;
  std::string gloss;
  std::vector<SynsetId> hypernyms;
};

/// Lemma forms used as index keys: lowercase, spaces replaced by underscores.
std::string normalize_lemma(std::string_view text);

/// Immutable lemma and synset store parsed from wndb-format files.
class LexicalDatabase {
 public:
  LexicalDatabase() = default;

  /// Senses of `lemma` in index order. Without `pos`, concatenates the
  /// noun, verb, adjective (incl. satellites) and adverb lists in that order.
  std::vector<SynsetId> senses(std::string_view lemma,
                               std::optional<Pos> pos = std::nullopt) const;

  std::size_t sense_count(std::string_view lemma) const;

  bool contains(std::string_view lemma) const;

  /// Throws UnknownSynset.
  const Synset& synset(const SynsetId& id) const;
  const Synset* find(const SynsetId& id) const noexcept;

  /// Throws UnknownSynset.
  const std::vector<std::string>& lemmas_of(const SynsetId& id) const;

  /// 1 / (1 + L) for the shortest undirected hypernym-graph path of length L;
  /// 0 when no path exists. Throws UnknownSynset.
  double path_similarity(const SynsetId& a, const SynsetId& b) const;

  std::size_t lemma_count() const noexcept { return index_.size(); }
  std::size_t synset_count() const noexcept { return synsets_.size(); }

  /// Every indexed lemma in lexicographic order.
  std::vector<std::string> lemmas() const;

 private:
  friend LexicalDatabase load_lexicon(const std::vector<std::filesystem::path>&,
                                      const std::vector<std::filesystem::path>&);

  // Sense lists per lookup class: noun, verb, adjective (with satellites), adverb.
  using SenseLists = std::array<std::vector<SynsetId>, 4>;

  std::unordered_map<std::string, SenseLists> index_;
  std::map<SynsetId, Synset> synsets_;
  std::map<SynsetId, std::vector<SynsetId>> hyponyms_;
};

/// Parses WordNet 3.0 `index.*` and `data.*` files. Header lines (leading
/// space) are skipped. Only `@` pointers are kept.
///
/// Throws IoError, FormatError (with line number) or DanglingReference.
LexicalDatabase load_lexicon(const std::vector<std::filesystem::path>& index_paths,
                             const std::vector<std::filesystem::path>& data_paths);

/// Loads `index.{noun,verb,adj,adv}` and `data.{noun,verb,adj,adv}` from `dir`.
LexicalDatabase load_lexicon_dir(const std::filesystem::path& dir);

}  // namespace semcom

template <>
struct std::hash<semcom::SynsetId> {
  std::size_t operator()(const semcom::SynsetId& id) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(id.pos) << 32) | id.offset);
  }
};
