#include "semcom/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "semcom/errors.hpp"
#include "semcom/porter.hpp"

namespace semcom {

namespace {

bool is_ascii_punct(unsigned char c) {
  return (c >= 0x21 && c <= 0x2f) || (c >= 0x3a && c <= 0x40) || (c >= 0x5b && c <= 0x60) ||
         (c >= 0x7b && c <= 0x7e);
}

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d: case 0x20:
    case 0x85: case 0xa0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202f: case 0x205f: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200a;
  }
}

// Decodes one code point at `i`; malformed bytes decode as themselves.
char32_t decode_utf8(std::string_view s, std::size_t i, std::size_t& len) {
  auto b0 = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) {
    return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xc0) == 0x80;
  };
  auto byte = [&](std::size_t k) { return static_cast<char32_t>(s[i + k] & 0x3f); };
  if (b0 < 0x80) {
    len = 1;
    return b0;
  }
  if ((b0 & 0xe0) == 0xc0 && cont(1)) {
    len = 2;
    return (static_cast<char32_t>(b0 & 0x1f) << 6) | byte(1);
  }
  if ((b0 & 0xf0) == 0xe0 && cont(1) && cont(2)) {
    len = 3;
    return (static_cast<char32_t>(b0 & 0x0f) << 12) | (byte(1) << 6) | byte(2);
  }
  if ((b0 & 0xf8) == 0xf0 && cont(1) && cont(2) && cont(3)) {
    len = 4;
    return (static_cast<char32_t>(b0 & 0x07) << 18) | (byte(1) << 12) | (byte(2) << 6) | byte(3);
  }
  len = 1;
  return b0;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t word_begin = std::string_view::npos;

  auto flush = [&](std::size_t word_end) {
    if (word_begin == std::string_view::npos) return;
    std::size_t b = word_begin, e = word_end;
    while (b < e && is_ascii_punct(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && is_ascii_punct(static_cast<unsigned char>(text[e - 1]))) --e;
    if (e > b) {
      Token t;
      t.surface.reserve(e - b);
      for (std::size_t k = b; k < e; ++k) {
        auto c = static_cast<unsigned char>(text[k]);
        t.surface.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : static_cast<char>(c));
      }
      t.index = out.size();
      t.begin = b;
      t.end = e;
      out.push_back(std::move(t));
    }
    word_begin = std::string_view::npos;
  };

  while (i < text.size()) {
    std::size_t len = 1;
    char32_t cp = decode_utf8(text, i, len);
    if (is_unicode_space(cp)) {
      flush(i);
    } else if (word_begin == std::string_view::npos) {
      word_begin = i;
    }
    i += len;
  }
  flush(text.size());
  return out;
}

StopwordList StopwordList::from_text(std::string_view text) {
  StopwordList list;
  list.digest_ = sha256(text);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) list.words_.emplace(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return list;
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open stopword list " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

bool StopwordList::contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

std::array<std::uint8_t, 4> StopwordList::digest_prefix() const noexcept {
  return {digest_[0], digest_[1], digest_[2], digest_[3]};
}

std::vector<Token> remove_stopwords(std::span<const Token> tokens, const StopwordList& stopwords) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stopwords.contains(t.surface)) out.push_back(t);
  }
  return out;
}

std::string lookup_lemma_for(const LexicalDatabase& db, std::string_view surface) {
  if (db.sense_count(surface) > 0) return std::string(surface);
  return porter_stem(surface);
}

std::vector<WordUnit> extract_word_units(const LexicalDatabase& db, const StopwordList& stopwords,
                                         std::string_view sentence) {
  std::vector<WordUnit> units;
  for (auto& tok : remove_stopwords(tokenize(sentence), stopwords)) {
    auto stem = porter_stem(tok.surface);
    auto lemma = db.sense_count(tok.surface) > 0 ? tok.surface : stem;
    auto candidates = db.senses(lemma);
    if (candidates.size() < 2) continue;
    WordUnit unit;
    unit.token_index = tok.index;
    unit.surface = std::move(tok.surface);
    unit.stem = std::move(stem);
    unit.lookup_lemma = std::move(lemma);
    unit.candidates = std::move(candidates);
    units.push_back(std::move(unit));
  }
  return units;
}

void apply_importance(std::span<WordUnit> units, std::span<const double> weights) {
  if (units.size() != weights.size()) {
    throw LengthMismatch("importance weights: expected " + std::to_string(units.size()) +
                         ", got " + std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("importance outside [0,1]");
  }
  for (std::size_t i = 0; i < units.size(); ++i) units[i].importance = weights[i];
}

std::string splice_tokens(std::string_view text, std::span<const Token> tokens,
                          std::span<const TokenReplacement> replacements) {
  std::vector<const TokenReplacement*> sorted;
  for (const auto& r : replacements) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->token_index < b->token_index; });

  std::string out;
  std::size_t cursor = 0;
  for (const auto* r : sorted) {
    const auto& tok = tokens[r->token_index];
    out.append(text.substr(cursor, tok.begin - cursor));
    out.append(r->text);
    cursor = tok.end;
  }
  out.append(text.substr(cursor));
  return out;
}

}  // namespace semcom
