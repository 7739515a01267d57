#include "semcom/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "semcom/errors.hpp"
#include "semcom/random.hpp"

namespace semcom {

namespace {

constexpr std::uint64_t kMaskStream = 0x3a5c;
constexpr std::uint64_t kUnitStream = 0x0417;
constexpr std::uint64_t kSmoothStream = 0x5300;
constexpr std::uint64_t kVariantStream = 0x7a41;

}  // namespace

// --- impairment -----------------------------------------------------------

Impairment impair(SharedKnowledge kb, std::span<const WordUnit> units,
                  const MeaningSelection& sender_selection, std::string_view sentence,
                  const ImpairmentConfig& cfg, const ParaphraseProvider* smoother) {
  if (sender_selection.size() != units.size()) {
    throw LengthMismatch("sender selection does not match the word units");
  }
  if (!(cfg.wdou_level >= 0.0 && cfg.wdou_level <= 1.0)) {
    throw DomainError("wdou_level outside [0,1]");
  }
  const auto tokens = tokenize(sentence);
  const std::size_t n = tokens.size();
  const std::size_t k = cfg.mask_all ? n : cfg.mask_count;
  if (k > n) {
    throw MaskTooLarge("cannot mask " + std::to_string(k) + " of " + std::to_string(n) +
                       " tokens");
  }

  // Forward Fisher-Yates over all positions; any prefix is a uniform subset,
  // and the order does not depend on k.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Xoshiro256StarStar mask_rng(derive_seed(cfg.seed, {kMaskStream}));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::swap(perm[i], perm[i + mask_rng.uniform(n - i)]);
  }

  std::vector<std::ptrdiff_t> unit_at(n, -1);
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (units[u].token_index >= n) throw LengthMismatch("word unit outside the sentence");
    unit_at[units[u].token_index] = static_cast<std::ptrdiff_t>(u);
  }
  std::vector<std::size_t> masked;  // unit indices, shuffled order
  for (std::size_t i = 0; i < k; ++i) {
    if (unit_at[perm[i]] >= 0) masked.push_back(static_cast<std::size_t>(unit_at[perm[i]]));
  }
  const auto understood = static_cast<std::size_t>(
      std::lround(cfg.wdou_level * static_cast<double>(masked.size())));

  Impairment out;
  out.selection = sender_selection;
  std::vector<TokenReplacement> replacements;
  for (std::size_t pos = 0; pos < masked.size(); ++pos) {
    const auto u = masked[pos];
    const auto& unit = units[u];
    // Both draws are taken whether or not the unit is understood.
    Xoshiro256StarStar rng(derive_seed(cfg.seed, {kUnitStream, unit.token_index}));
    const auto r = rng.uniform(unit.candidates.size());
    const double x = rng.uniform01();

    SynsetId chosen;
    if (pos < understood) {
      if (!sender_selection[u]) throw UnresolvedEntry("sender entry " + std::to_string(u));
      chosen = *sender_selection[u];
    } else {
      chosen = unit.candidates[r];
    }
    out.selection[u] = chosen;

    // The unit's own lemma goes first, so the same draw keeps the word under
    // any sense; the pick stays uniform over the synset's lemmas.
    auto lemmas = kb.lexicon.lemmas_of(chosen);
    auto own = std::find(lemmas.begin(), lemmas.end(), unit.lookup_lemma);
    if (own != lemmas.end()) std::rotate(lemmas.begin(), own, own + 1);
    auto li = std::min(lemmas.size() - 1,
                       static_cast<std::size_t>(x * static_cast<double>(lemmas.size())));
    const auto& lemma = lemmas[li] == unit.lookup_lemma ? unit.surface : lemmas[li];
    if (lemma != tokens[unit.token_index].surface) {
      replacements.push_back({unit.token_index, lemma});
    }
  }
  out.sentence = splice_tokens(sentence, tokens, replacements);

  if (cfg.smoothing && smoother) {
    out.sentence =
        smoother->paraphrase(out.sentence, 1, derive_seed(cfg.seed, {kSmoothStream})).variants.at(0);
  }
  return out;
}

Interpretation ImpairedReceiver::interpret(const ReceivedMessage& msg) {
  auto cfg = cfg_;
  if (msg.round > 1) {
    cfg.seed = derive_seed(cfg_.seed, {msg.round});
    cfg.mask_count = std::min(cfg.mask_count, tokenize(msg.sentence).size());
  }
  auto imp = impair(kb_, msg.units, to_selection(msg.sender_entries), msg.sentence, cfg,
                    smoother_);
  return {std::move(imp.selection), std::move(imp.sentence)};
}

// --- corpus ---------------------------------------------------------------

std::vector<std::string> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t\v\f") == std::string::npos) continue;
    out.push_back(line);
  }
  if (in.bad()) throw IoError("read error in " + path.string());
  return out;
}

std::vector<std::string> filter_by_length(std::span<const std::string> sentences, std::size_t n) {
  std::vector<std::string> out;
  for (const auto& s : sentences) {
    if (tokenize(s).size() == n) out.push_back(s);
  }
  return out;
}

// --- config ---------------------------------------------------------------

std::vector<std::size_t> ExperimentConfig::effective_mask_counts() const {
  if (!mask_counts.empty()) return mask_counts;
  std::vector<std::size_t> all(sentence_length + 1);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

void ExperimentConfig::validate() const {
  if (sentence_length == 0 || sentences_per_cell == 0 || trials_per_sentence == 0 || l == 0 ||
      top_k == 0) {
    throw DomainError("experiment counts must be at least 1");
  }
  if (wdou_levels.empty()) throw DomainError("wdou_levels is empty");
  for (double w : wdou_levels) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("wdou level outside [0,1]");
  }
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

class ConfigReader {
 public:
  ConfigReader(std::filesystem::path path, std::string text)
      : path_(std::move(path)), text_(std::move(text)) {
    std::istringstream in(text_);
    try {
      boost::property_tree::ini_parser::read_ini(in, tree_);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw FormatError(path_.string(), e.line(), e.message());
    }
  }

  const boost::property_tree::ptree& tree() const { return tree_; }

  template <typename T>
  void get(const std::string& key, T& out) {
    auto v = tree_.get_optional<std::string>(boost::property_tree::ptree::path_type(key, '.'));
    if (!v) return;
    seen_.push_back(key);
    try {
      out = parse<T>(unquote(*v));
    } catch (const DomainError& e) {
      throw FormatError(path_.string(), line_of(key), key + ": " + e.what());
    }
  }

  void get_path(const std::string& key, std::filesystem::path& out) {
    std::string s;
    get(key, s);
    if (s.empty()) return;
    std::filesystem::path p(s);
    out = p.is_absolute() ? p : path_.parent_path() / p;
  }

  void get_path(const std::string& key, std::optional<std::filesystem::path>& out) {
    std::filesystem::path p;
    get_path(key, p);
    if (!p.empty()) out = p;
  }

  void reject_unknown() const {
    for (const auto& [section, body] : tree_) {
      if (body.empty()) {
        throw FormatError(path_.string(), line_of(section), "key outside a section: " + section);
      }
      for (const auto& [key, _] : body) {
        auto full = section + "." + key;
        if (std::find(seen_.begin(), seen_.end(), full) == seen_.end()) {
          throw FormatError(path_.string(), line_of(key), "unknown key " + full);
        }
      }
    }
  }

 private:
  template <typename T>
  static T parse(const std::string& s) {
    if constexpr (std::is_same_v<T, std::string>) {
      return s;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (s == "true") return true;
      if (s == "false") return false;
      throw DomainError("expected true or false, got '" + s + "'");
    } else if constexpr (std::is_same_v<T, SenderMode>) {
      if (s == "original") return SenderMode::original;
      if (s == "paraphrase") return SenderMode::paraphrase;
      throw DomainError("expected original or paraphrase, got '" + s + "'");
    } else if constexpr (std::is_arithmetic_v<T>) {
      T v{};
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        throw DomainError("not a number: '" + s + "'");
      }
      return v;
    } else {
      // std::vector<element>
      using E = typename T::value_type;
      if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
        throw DomainError("expected a [list], got '" + s + "'");
      }
      T out;
      std::string_view body(s.data() + 1, s.size() - 2);
      if (trim(body).empty()) return out;
      std::size_t start = 0;
      while (start <= body.size()) {
        auto comma = body.find(',', start);
        auto item = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
        out.push_back(parse<E>(unquote(std::string(item))));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return out;
    }
  }

  std::size_t line_of(const std::string& key) const {
    auto leaf = key.substr(key.rfind('.') == std::string::npos ? 0 : key.rfind('.') + 1);
    std::istringstream in(text_);
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      auto t = trim(line);
      if (t.rfind(leaf, 0) == 0 || t == "[" + leaf + "]") return n;
    }
    return 0;
  }

  std::filesystem::path path_;
  std::string text_;
  boost::property_tree::ptree tree_;
  std::vector<std::string> seen_;
};

}  // namespace

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();

  ConfigReader r(path, buf.str());
  ExperimentConfig cfg;
  r.get_path("corpus.path", cfg.corpus_path);
  r.get("corpus.sentence_length", cfg.sentence_length);
  r.get("corpus.sentences_per_cell", cfg.sentences_per_cell);
  r.get("trials.trials_per_sentence", cfg.trials_per_sentence);
  r.get("trials.base_seed", cfg.base_seed);
  r.get("trials.threads", cfg.threads);
  r.get("impairment.wdou_levels", cfg.wdou_levels);
  r.get("impairment.mask_counts", cfg.mask_counts);
  r.get("impairment.smoothing", cfg.smoothing);
  r.get("impairment.sender_mode", cfg.sender_mode);
  r.get("paraphrase.l", cfg.l);
  r.get("paraphrase.top_k", cfg.top_k);
  r.get_path("output.csv", cfg.csv_path);
  r.get_path("output.svg", cfg.svg_path);
  r.reject_unknown();
  if (cfg.corpus_path.empty()) throw FormatError(path.string(), 0, "corpus.path is required");
  cfg.validate();
  return cfg;
}

// --- runners --------------------------------------------------------------

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::size_t error_index = n;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::pair<double, double> mean_and_std(std::span<const double> xs) {
  if (xs.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

namespace {

std::vector<std::string> pick_sentences(const ExperimentConfig& cfg) {
  auto matching = filter_by_length(load_corpus(cfg.corpus_path), cfg.sentence_length);
  if (matching.size() < cfg.sentences_per_cell) {
    throw InsufficientCorpus("corpus has " + std::to_string(matching.size()) + " sentences of " +
                             std::to_string(cfg.sentence_length) + " tokens, need " +
                             std::to_string(cfg.sentences_per_cell));
  }
  matching.resize(cfg.sentences_per_cell);
  return matching;
}

// Shared by every cell, so cells compare like with like.
std::uint64_t trial_seed(std::uint64_t base, std::size_t sentence, std::size_t trial) {
  return derive_seed(base, {sentence, trial});
}

SessionPolicy single_round(const ExperimentConfig& cfg, std::uint64_t seed) {
  SessionPolicy p;
  p.max_rounds = 1;
  p.sender_mode = cfg.sender_mode;
  p.seed = seed;
  return p;
}

}  // namespace

ExperimentResult run_experiment_a(const ExperimentEnv& env, const ExperimentConfig& cfg) {
  cfg.validate();
  const auto masks = cfg.effective_mask_counts();
  for (auto m : masks) {
    if (m > cfg.sentence_length) {
      throw MaskTooLarge("mask count " + std::to_string(m) + " exceeds sentence length " +
                         std::to_string(cfg.sentence_length));
    }
  }
  const auto sentences = pick_sentences(cfg);
  std::vector<Transmission> txs;
  for (const auto& s : sentences) txs.push_back(first_sense_transmission(env.kb, s));

  struct Cell {
    double w;
    std::size_t m;
  };
  std::vector<Cell> cells;
  for (double w : cfg.wdou_levels) {
    for (auto m : masks) cells.push_back({w, m});
  }
  const std::size_t N = sentences.size(), T = cfg.trials_per_sentence, per_cell = N * T;
  std::vector<double> sim_s(cells.size() * per_cell);

  parallel_for(sim_s.size(), cfg.threads, [&](std::size_t idx) {
    const auto& cell = cells[idx / per_cell];
    const std::size_t i = (idx % per_cell) / T, t = idx % T;
    const auto seed = trial_seed(cfg.base_seed, i, t);
    ImpairedReceiver receiver(env.kb, {cell.m, false, cell.w, seed, cfg.smoothing},
                              &env.paraphraser);
    auto s = run_local_session(env.kb, txs[i], {env.embedder, &env.paraphraser},
                               single_round(cfg, seed), receiver);
    sim_s[idx] = s.sender.dou.sim_s;
  });

  ExperimentResult result{ExperimentKind::a, {}};
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto [mean, sd] = mean_and_std(std::span(sim_s).subspan(c * per_cell, per_cell));
    result.rows.push_back({cells[c].w, cells[c].m, mean, sd, per_cell, {}, {}});
  }
  return result;
}

ExperimentResult run_experiment_b(const ExperimentEnv& env, const ExperimentConfig& cfg) {
  cfg.validate();
  const auto sentences = pick_sentences(cfg);
  const std::size_t N = sentences.size(), T = cfg.trials_per_sentence, per_cell = N * T;

  std::vector<std::vector<std::string>> candidates(N);
  for (std::size_t i = 0; i < N; ++i) {
    auto variants = env.paraphraser.paraphrase(sentences[i], cfg.l,
                                               derive_seed(cfg.base_seed, {kVariantStream, i}));
    for (auto& v : filter_top_k(sentences[i], variants, env.embedder, cfg.top_k)) {
      candidates[i].push_back(std::move(v.sentence));
    }
  }

  const auto& levels = cfg.wdou_levels;
  std::vector<double> baseline(levels.size() * per_cell), optimized(baseline.size());

  parallel_for(baseline.size(), cfg.threads, [&](std::size_t idx) {
    const double w = levels[idx / per_cell];
    const std::size_t i = (idx % per_cell) / T, t = idx % T;
    const auto seed = trial_seed(cfg.base_seed, i, t);
    const auto& original = sentences[i];

    std::optional<double> base;
    auto trial = [&](const std::string& candidate) {
      ImpairedReceiver receiver(env.kb, {0, true, w, seed, cfg.smoothing}, &env.paraphraser);
      auto tx = first_sense_transmission(env.kb, candidate);
      auto s = run_local_session(env.kb, std::move(tx), {env.embedder, &env.paraphraser},
                                 single_round(cfg, seed), receiver);
      // The original is always evaluated first.
      if (!base) base = s.sender.dou.sim_s;
      return s.sender.dou;
    };
    auto choice = select_best_transmission(original, candidates[i], trial);
    baseline[idx] = *base;
    optimized[idx] = choice.report.sim_s;
  });

  ExperimentResult result{ExperimentKind::b, {}};
  for (std::size_t c = 0; c < levels.size(); ++c) {
    auto base_span = std::span(baseline).subspan(c * per_cell, per_cell);
    auto opt_span = std::span(optimized).subspan(c * per_cell, per_cell);
    auto [opt_mean, opt_sd] = mean_and_std(opt_span);
    auto base_mean = mean_and_std(base_span).first;
    result.rows.push_back(
        {levels[c], cfg.sentence_length, opt_mean, opt_sd, per_cell, base_mean, opt_mean});
  }
  return result;
}

// --- reports --------------------------------------------------------------

namespace {

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

constexpr const char* kCsvHeaderA = "experiment,wdou_level,mask_count,mean_sdou,std_sdou,trials";
constexpr const char* kCsvHeaderB =
    "experiment,wdou_level,mask_count,mean_sdou,std_sdou,trials,baseline_mean,optimized_mean";

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string to_csv(const ExperimentResult& result) {
  const bool b = result.kind == ExperimentKind::b;
  std::string out = b ? kCsvHeaderB : kCsvHeaderA;
  out += '\n';
  for (const auto& r : result.rows) {
    out += b ? "B," : "A,";
    out += fixed6(r.wdou_level) + ',' + std::to_string(r.mask_count) + ',' + fixed6(r.mean_sdou) +
           ',' + fixed6(r.std_sdou) + ',' + std::to_string(r.trials);
    if (b) {
      out += ',' + fixed6(r.baseline_mean.value_or(0.0)) + ',' +
             fixed6(r.optimized_mean.value_or(0.0));
    }
    out += '\n';
  }
  return out;
}

ExperimentResult parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw FormatError("csv", 1, "missing header");
  ExperimentResult result;
  if (line == kCsvHeaderA) result.kind = ExperimentKind::a;
  else if (line == kCsvHeaderB) result.kind = ExperimentKind::b;
  else throw FormatError("csv", 1, "unexpected header");
  const std::size_t want = result.kind == ExperimentKind::b ? 8 : 6;

  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != want) throw FormatError("csv", n, "expected " + std::to_string(want) + " fields");
    auto num = [&](const std::string& s, auto& v) {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        throw FormatError("csv", n, "bad number '" + s + "'");
      }
    };
    ResultRow r;
    num(f[1], r.wdou_level);
    num(f[2], r.mask_count);
    num(f[3], r.mean_sdou);
    num(f[4], r.std_sdou);
    num(f[5], r.trials);
    if (want == 8) {
      double bm = 0, om = 0;
      num(f[6], bm);
      num(f[7], om);
      r.baseline_mean = bm;
      r.optimized_mean = om;
    }
    result.rows.push_back(r);
  }
  return result;
}

void write_csv(const ExperimentResult& result, const std::filesystem::path& path) {
  if (result.rows.empty()) throw DomainError("refusing to write an empty result");
  write_file(path, to_csv(result));
}

ExperimentResult read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

std::string to_svg(const ExperimentResult& result) {
  constexpr double W = 640, H = 400, left = 60, right = 150, top = 40, bottom = 50;
  constexpr const char* colors[] = {"#d62728", "#ff7f0e", "#2ca02c", "#1f77b4", "#9467bd",
                                    "#8c564b"};
  const double pw = W - left - right, ph = H - top - bottom;

  std::size_t xmin = SIZE_MAX, xmax = 0;
  std::vector<double> levels;
  for (const auto& r : result.rows) {
    xmin = std::min(xmin, r.mask_count);
    xmax = std::max(xmax, r.mask_count);
    if (std::find(levels.begin(), levels.end(), r.wdou_level) == levels.end()) {
      levels.push_back(r.wdou_level);
    }
  }
  double x0 = static_cast<double>(xmin), x1 = static_cast<double>(xmax);
  if (x1 <= x0) {
    x0 -= 1;
    x1 += 1;
  }
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (1.0 - y) * ph; };

  std::string out;
  char buf[256];
  auto put = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
  };

  put("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
      "viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\" font-size=\"12\">\n",
      W, H, W, H);
  put("<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", W, H);
  put("<text x=\"%.1f\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">%s</text>\n",
      left + pw / 2,
      result.kind == ExperimentKind::a ? "Mean SDoU vs masked words"
                                       : "Optimized mean SDoU, all words masked");
  for (int i = 0; i <= 4; ++i) {
    double y = i / 4.0;
    put("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n", left, sy(y),
        left + pw, sy(y));
    put("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.2f</text>\n", left - 6, sy(y) + 4, y);
  }
  for (std::size_t x = xmin; x <= xmax; ++x) {
    put("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%zu</text>\n", sx(double(x)),
        top + ph + 16, x);
  }
  put("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"#333\"/>\n",
      left, top, pw, ph);
  put("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">masked words</text>\n", left + pw / 2,
      H - 12);
  put("<text x=\"16\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 16 %.1f)\">"
      "mean SDoU</text>\n",
      top + ph / 2, top + ph / 2);

  for (std::size_t s = 0; s < levels.size(); ++s) {
    const char* color = colors[s % std::size(colors)];
    std::string points;
    for (const auto& r : result.rows) {
      if (r.wdou_level != levels[s]) continue;
      put("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", sx(double(r.mask_count)),
          sy(r.mean_sdou), color);
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(double(r.mask_count)), sy(r.mean_sdou));
      points += buf;
    }
    if (!points.empty()) points.pop_back();
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    double ly = top + 10 + 18.0 * static_cast<double>(s);
    put("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" stroke-width=\"2\"/>\n",
        left + pw + 12, ly, left + pw + 32, ly, color);
    put("<text x=\"%.1f\" y=\"%.1f\">WDoU %.0f%%</text>\n", left + pw + 38, ly + 4,
        levels[s] * 100.0);
  }
  out += "</svg>\n";
  return out;
}

void render_chart(const ExperimentResult& result, const std::filesystem::path& path) {
  if (result.rows.empty()) throw DomainError("refusing to chart an empty result");
  write_file(path, to_svg(result));
}

}  // namespace semcom
