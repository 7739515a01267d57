#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semcom/dou.hpp"
#include "semcom/paraphrase.hpp"
#include "semcom/session.hpp"
#include "semcom/similarity.hpp"

namespace semcom {

struct ImpairmentConfig {
  std::size_t mask_count = 0;
  /// Mask every token of whatever sentence arrives; overrides mask_count.
  bool mask_all = false;
  double wdou_level = 1.0;
  std::uint64_t seed = 0;
  /// Pass the rebuilt sentence through the receiver's paraphraser.
  bool smoothing = false;
};

struct Impairment {
  MeaningSelection selection;
  std::string sentence;
};

/// Simulated receiver deficiency. Masks mask_count tokens chosen uniformly
/// without replacement. Of the m masked word units, the first
/// round(wdou_level * m) in shuffled order are understood and keep the
/// sender's synset; the others take a uniform candidate. Every masked unit's
/// token is rewritten as a uniform lemma of its synset.
///
/// Random streams are keyed by token position, so two configs that differ
/// only in wdou_level or mask_count share every draw they have in common.
///
/// Throws MaskTooLarge, LengthMismatch.
Impairment impair(SharedKnowledge kb, std::span<const WordUnit> units,
                  const MeaningSelection& sender_selection, std::string_view sentence,
                  const ImpairmentConfig& cfg, const ParaphraseProvider* smoother = nullptr);

class ImpairedReceiver final : public ReceiverBehavior {
 public:
  ImpairedReceiver(SharedKnowledge kb, ImpairmentConfig cfg,
                   const ParaphraseProvider* smoother = nullptr)
      : kb_(kb), cfg_(cfg), smoother_(smoother) {}

  /// Round 1 uses the configured seed; later rounds derive fresh streams and
  /// clamp the mask to the sentence they receive.
  Interpretation interpret(const ReceivedMessage& msg) override;

 private:
  SharedKnowledge kb_;
  ImpairmentConfig cfg_;
  const ParaphraseProvider* smoother_;
};

/// One sentence per line, blank lines dropped. Throws IoError.
std::vector<std::string> load_corpus(const std::filesystem::path& path);
/// Sentences with exactly n tokens (counted before stopword removal).
std::vector<std::string> filter_by_length(std::span<const std::string> sentences, std::size_t n);

enum class ExperimentKind : std::uint8_t { a, b };

struct ExperimentConfig {
  std::filesystem::path corpus_path;
  std::size_t sentence_length = 5;
  std::size_t sentences_per_cell = 12;
  std::size_t trials_per_sentence = 50;
  std::vector<double> wdou_levels{0.0, 0.5, 1.0};
  /// Empty means 0..sentence_length. Ignored by experiment B, which masks all.
  std::vector<std::size_t> mask_counts;
  std::size_t l = kDefaultVariantCount;
  std::size_t top_k = kDefaultTopK;
  std::uint64_t base_seed = 0;
  bool smoothing = false;
  SenderMode sender_mode = SenderMode::original;
  /// 0 = one worker per hardware thread.
  std::size_t threads = 1;

  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> svg_path;

  std::vector<std::size_t> effective_mask_counts() const;
  /// Throws DomainError.
  void validate() const;
};

/// INI-style file: [corpus] path, sentence_length, sentences_per_cell;
/// [trials] trials_per_sentence, base_seed, threads; [impairment]
/// wdou_levels, mask_counts, smoothing, sender_mode; [paraphrase] l, top_k;
/// [output] csv, svg. Lists are written [a, b, c]. Relative paths resolve
/// against the file's directory. Throws IoError, FormatError, DomainError.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ResultRow {
  double wdou_level = 0.0;
  std::size_t mask_count = 0;
  double mean_sdou = 0.0;
  double std_sdou = 0.0;
  std::size_t trials = 0;
  std::optional<double> baseline_mean;
  std::optional<double> optimized_mean;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::a;
  std::vector<ResultRow> rows;

  friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

/// Everything a run needs besides its config. The paraphraser serves the
/// sender (paraphrase mode), smoothing, and experiment B's variants.
struct ExperimentEnv {
  SharedKnowledge kb;
  const EmbeddingProvider& embedder;
  const ParaphraseProvider& paraphraser;
};

/// Throws InsufficientCorpus, MaskTooLarge, DomainError.
ExperimentResult run_experiment_a(const ExperimentEnv& env, const ExperimentConfig& cfg);
ExperimentResult run_experiment_b(const ExperimentEnv& env, const ExperimentConfig& cfg);

/// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency).
/// The first failing index's exception is rethrown.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// Mean and sample standard deviation, summed in index order.
std::pair<double, double> mean_and_std(std::span<const double> xs);

std::string to_csv(const ExperimentResult& result);
ExperimentResult parse_csv(std::string_view text);
/// Throws DomainError on an empty result (nothing is written) or IoError.
void write_csv(const ExperimentResult& result, const std::filesystem::path& path);
ExperimentResult read_csv(const std::filesystem::path& path);

std::string to_svg(const ExperimentResult& result);
void render_chart(const ExperimentResult& result, const std::filesystem::path& path);

}  // namespace semcom
