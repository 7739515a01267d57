#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "semcom/lexicon.hpp"
#include "semcom/sha256.hpp"

namespace semcom {

struct Token {
  std::string surface;
  std::size_t index = 0;
  // Byte range of the token core inside the source text.
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Splits on Unicode whitespace, strips leading/trailing ASCII punctuation,
/// lowercases ASCII letters and drops tokens that end up empty.
std::vector<Token> tokenize(std::string_view text);

/// Stopword set shared by both parties. Its SHA-256 is part of the wire header.
class StopwordList {
 public:
  /// One word per line, LF-terminated. Blank lines ignored.
  static StopwordList from_text(std::string_view text);
  static StopwordList load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }
  const Digest& digest() const noexcept { return digest_; }
  std::array<std::uint8_t, 4> digest_prefix() const noexcept;

 private:
  std::unordered_set<std::string> words_;
  Digest digest_{};
};

std::vector<Token> remove_stopwords(std::span<const Token> tokens, const StopwordList& stopwords);

struct WordUnit {
  std::size_t token_index = 0;
  std::string surface;
  std::string stem;
  std::string lookup_lemma;
  std::vector<SynsetId> candidates;
  double importance = 1.0;

  std::size_t sense_count() const noexcept { return candidates.size(); }

  friend bool operator==(const WordUnit&, const WordUnit&) = default;
};

/// Lexicon key for a surface form: the surface itself when the lexicon knows
/// it, otherwise its Porter stem.
std::string lookup_lemma_for(const LexicalDatabase& db, std::string_view surface);

/// tokenize -> remove_stopwords -> surface-first/stem-fallback lookup ->
/// keep words with at least two senses. Importance defaults to 1.0.
std::vector<WordUnit> extract_word_units(const LexicalDatabase& db, const StopwordList& stopwords,
                                         std::string_view sentence);

/// Overrides per-unit importance. Throws LengthMismatch or DomainError.
void apply_importance(std::span<WordUnit> units, std::span<const double> weights);

/// Rebuilds `text` with the cores of selected tokens replaced. Everything
/// outside the replaced byte ranges is kept verbatim.
struct TokenReplacement {
  std::size_t token_index;
  std::string text;
};
std::string splice_tokens(std::string_view text, std::span<const Token> tokens,
                          std::span<const TokenReplacement> replacements);

/// Lexicon plus stopword list: the knowledge both parties must share.
struct SharedKnowledge {
  const LexicalDatabase& lexicon;
  const StopwordList& stopwords;
};

}  // namespace semcom
