#include "semcom/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

// Lookup class: satellites live with adjectives.
int lookup_class(Pos p) {
  switch (p) {
    case Pos::noun: return 0;
    case Pos::verb: return 1;
    case Pos::adj:
    case Pos::adj_satellite: return 2;
    case Pos::adv: return 3;
  }
  return 0;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Cursor over one line's fields that reports failures with file/line context.
class FieldReader {
 public:
  FieldReader(std::vector<std::string_view> fields, const std::string& source, std::size_t line)
      : fields_(std::move(fields)), source_(source), line_(line) {}

  std::string_view next(const char* what) {
    if (pos_ >= fields_.size()) fail(std::string("missing ") + what);
    return fields_[pos_++];
  }

  std::uint64_t number(const char* what, int base = 10) {
    auto tok = next(what);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, base);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
      fail(std::string("non-numeric ") + what + " '" + std::string(tok) + "'");
    }
    return v;
  }

  std::uint32_t offset(const char* what) {
    auto v = number(what);
    if (v > SynsetId::kMaxOffset) fail(std::string(what) + " exceeds 8 digits");
    return static_cast<std::uint32_t>(v);
  }

  Pos pos(const char* what) {
    auto tok = next(what);
    std::optional<Pos> p;
    if (tok.size() == 1) p = pos_from_char(tok[0]);
    if (!p) fail(std::string("bad part of speech '") + std::string(tok) + "'");
    return *p;
  }

  std::size_t remaining() const { return fields_.size() - pos_; }

  [[noreturn]] void fail(const std::string& what) const { throw FormatError(source_, line_, what); }

 private:
  std::vector<std::string_view> fields_;
  std::size_t pos_ = 0;
  const std::string& source_;
  std::size_t line_;
};

template <typename LineFn>
void for_each_line(const std::filesystem::path& path, LineFn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // License header lines start with a space.
    if (line.empty() || line.front() == ' ') continue;
    fn(std::string_view(line), lineno);
  }
  if (in.bad()) throw IoError("read failed on " + path.string());
}

struct PendingHypernym {
  SynsetId from;
  int target_class;
  std::uint32_t target_offset;
};

using ClassOffset = std::pair<int, std::uint32_t>;

}  // namespace

std::optional<Pos> pos_from_char(char c) noexcept {
  switch (c) {
    case 'n': return Pos::noun;
    case 'v': return Pos::verb;
    case 'a': return Pos::adj;
    case 'r': return Pos::adv;
    case 's': return Pos::adj_satellite;
    default: return std::nullopt;
  }
}

std::string to_string(const SynsetId& id) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c:%08u", to_char(id.pos), static_cast<unsigned>(id.offset));
  return buf;
}

std::optional<SynsetId> parse_synset_id(std::string_view text) {
  if (text.size() != 10 || text[1] != ':') return std::nullopt;
  auto pos = pos_from_char(text[0]);
  if (!pos) return std::nullopt;
  std::uint32_t off = 0;
  auto digits = text.substr(2);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  std::from_chars(digits.data(), digits.data() + digits.size(), off);
  return SynsetId{*pos, off};
}

std::string normalize_lemma(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == ' ') c = '_';
    else c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<SynsetId> LexicalDatabase::senses(std::string_view lemma,
                                              std::optional<Pos> pos) const {
  auto it = index_.find(normalize_lemma(lemma));
  if (it == index_.end()) return {};
  if (pos) return it->second[lookup_class(*pos)];
  std::vector<SynsetId> out;
  for (const auto& list : it->second) out.insert(out.end(), list.begin(), list.end());
  return out;
}

std::size_t LexicalDatabase::sense_count(std::string_view lemma) const {
  auto it = index_.find(normalize_lemma(lemma));
  if (it == index_.end()) return 0;
  std::size_t n = 0;
  for (const auto& list : it->second) n += list.size();
  return n;
}

bool LexicalDatabase::contains(std::string_view lemma) const {
  return index_.find(normalize_lemma(lemma)) != index_.end();
}

const Synset* LexicalDatabase::find(const SynsetId& id) const noexcept {
  auto it = synsets_.find(id);
  return it == synsets_.end() ? nullptr : &it->second;
}

const Synset& LexicalDatabase::synset(const SynsetId& id) const {
  if (const auto* s = find(id)) return *s;
  throw UnknownSynset("unknown synset " + to_string(id));
}

const std::vector<std::string>& LexicalDatabase::lemmas_of(const SynsetId& id) const {
  return synset(id).lemmas;
}

std::vector<std::string> LexicalDatabase::lemmas() const {
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto& [lemma, _] : index_) out.push_back(lemma);
  std::sort(out.begin(), out.end());
  return out;
}

double LexicalDatabase::path_similarity(const SynsetId& a, const SynsetId& b) const {
  synset(a);
  synset(b);
  if (a == b) return 1.0;

  // Breadth-first search treating hypernym edges as undirected.
  std::unordered_map<SynsetId, std::size_t> dist{{a, 0}};
  std::deque<SynsetId> queue{a};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    auto d = dist[cur];
    auto visit = [&](const SynsetId& next) {
      if (dist.emplace(next, d + 1).second) queue.push_back(next);
    };
    for (const auto& h : synsets_.at(cur).hypernyms) visit(h);
    if (auto it = hyponyms_.find(cur); it != hyponyms_.end()) {
      for (const auto& h : it->second) visit(h);
    }
    if (auto it = dist.find(b); it != dist.end()) {
      return 1.0 / (1.0 + static_cast<double>(it->second));
    }
  }
  return 0.0;
}

LexicalDatabase load_lexicon(const std::vector<std::filesystem::path>& index_paths,
                             const std::vector<std::filesystem::path>& data_paths) {
  LexicalDatabase db;
  std::map<ClassOffset, SynsetId> by_class;
  std::vector<PendingHypernym> pending;

  for (const auto& path : data_paths) {
    const auto source = path.string();
    for_each_line(path, [&](std::string_view line, std::size_t lineno) {
      auto bar = line.find('|');
      auto head = bar == std::string_view::npos ? line : line.substr(0, bar);
      auto gloss = bar == std::string_view::npos ? std::string_view{} : trim(line.substr(bar + 1));

      FieldReader r(split_ws(head), source, lineno);
      Synset syn;
      syn.id.offset = r.offset("synset_offset");
      r.number("lex_filenum");
      syn.id.pos = r.pos("ss_type");
      auto w_cnt = r.number("w_cnt", 16);
      if (w_cnt == 0) r.fail("synset without lemmas");
      for (std::uint64_t i = 0; i < w_cnt; ++i) {
        auto word = r.next("word");
        // Adjective markers such as "(a)" or "(ip)".
        if (auto paren = word.find('('); paren != std::string_view::npos) word = word.substr(0, paren);
        auto lemma = normalize_lemma(word);
        r.number("lex_id", 16);
        if (std::find(syn.lemmas.begin(), syn.lemmas.end(), lemma) == syn.lemmas.end()) {
          syn.lemmas.push_back(std::move(lemma));
        }
      }
      auto p_cnt = r.number("p_cnt");
      for (std::uint64_t i = 0; i < p_cnt; ++i) {
        auto symbol = r.next("pointer_symbol");
        auto target = r.offset("pointer offset");
        auto target_pos = r.pos("pointer pos");
        r.number("source/target", 16);
        if (symbol == "@") {
          pending.push_back({syn.id, lookup_class(target_pos), target});
        }
      }
      // Verb frames and anything else before the gloss are ignored.
      syn.gloss = std::string(gloss);

      ClassOffset key{lookup_class(syn.id.pos), syn.id.offset};
      if (!by_class.emplace(key, syn.id).second) {
        r.fail("duplicate synset " + to_string(syn.id));
      }
      auto id = syn.id;
      db.synsets_.emplace(id, std::move(syn));
    });
  }

  for (const auto& p : pending) {
    auto it = by_class.find({p.target_class, p.target_offset});
    if (it == by_class.end()) {
      throw DanglingReference(to_string(p.from) + " has hypernym offset " +
                              std::to_string(p.target_offset) + " absent from data files");
    }
    auto& hyps = db.synsets_.at(p.from).hypernyms;
    if (std::find(hyps.begin(), hyps.end(), it->second) == hyps.end()) {
      hyps.push_back(it->second);
      db.hyponyms_[it->second].push_back(p.from);
    }
  }

  for (const auto& path : index_paths) {
    const auto source = path.string();
    for_each_line(path, [&](std::string_view line, std::size_t lineno) {
      FieldReader r(split_ws(line), source, lineno);
      auto lemma = normalize_lemma(r.next("lemma"));
      auto cls = lookup_class(r.pos("pos"));
      auto synset_cnt = r.number("synset_cnt");
      auto p_cnt = r.number("p_cnt");
      for (std::uint64_t i = 0; i < p_cnt; ++i) r.next("ptr_symbol");
      r.number("sense_cnt");
      r.number("tagsense_cnt");
      if (r.remaining() != synset_cnt) {
        r.fail("expected " + std::to_string(synset_cnt) + " synset offsets, found " +
               std::to_string(r.remaining()));
      }
      auto& list = db.index_[lemma][cls];
      for (std::uint64_t i = 0; i < synset_cnt; ++i) {
        auto off = r.offset("synset_offset");
        auto it = by_class.find({cls, off});
        if (it == by_class.end()) {
          throw DanglingReference(source + ":" + std::to_string(lineno) + ": '" + lemma +
                                  "' cites offset " + std::to_string(off) +
                                  " absent from data files");
        }
        if (std::find(list.begin(), list.end(), it->second) == list.end()) {
          list.push_back(it->second);
        }
      }
    });
  }
  return db;
}

LexicalDatabase load_lexicon_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> index, data;
  for (const char* suffix : {"noun", "verb", "adj", "adv"}) {
    index.push_back(dir / (std::string("index.") + suffix));
    data.push_back(dir / (std::string("data.") + suffix));
  }
  return load_lexicon(index, data);
}

}  // namespace semcom
