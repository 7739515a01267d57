#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semcom/dou.hpp"
#include "semcom/pipeline.hpp"
#include "semcom/similarity.hpp"

namespace semcom {

inline constexpr std::size_t kDefaultVariantCount = 35;
inline constexpr std::size_t kDefaultTopK = 20;

/// l rewrites of one sentence. The original is kept apart and does not count
/// towards the l variants, although a variant may coincide with it textually.
struct VariantSet {
  std::string original;
  std::vector<std::string> variants;
  std::string generator;
  std::uint64_t seed = 0;

  friend bool operator==(const VariantSet&, const VariantSet&) = default;
};

class ParaphraseProvider {
 public:
  virtual ~ParaphraseProvider() = default;
  virtual VariantSet paraphrase(const std::string& sentence, std::size_t count,
                                std::uint64_t seed) const = 0;
  virtual std::string identity() const = 0;
};

/// Per variant and per known content word: keep the word with probability
/// 0.5, otherwise pick a uniform candidate synset and a uniform lemma of it
/// (underscores rendered as spaces). Stopwords and unknown words are copied.
/// Each (variant, token) pair draws from its own xoshiro256** stream.
VariantSet synonym_paraphrase(const SharedKnowledge& kb, std::string_view sentence,
                              std::size_t count, std::uint64_t seed);

class SynonymParaphraser final : public ParaphraseProvider {
 public:
  explicit SynonymParaphraser(SharedKnowledge kb) : kb_(kb) {}

  VariantSet paraphrase(const std::string& sentence, std::size_t count,
                        std::uint64_t seed) const override {
    return synonym_paraphrase(kb_, sentence, count, seed);
  }
  std::string identity() const override { return "synonym-substitution/1"; }

 private:
  SharedKnowledge kb_;
};

/// POST {endpoint}/paraphrase. Exactly `count` variants or ProtocolError.
VariantSet remote_paraphrase(const std::string& endpoint, const std::string& sentence,
                             std::size_t count,
                             std::chrono::milliseconds timeout = kDefaultRemoteTimeout,
                             std::optional<std::uint64_t> seed = std::nullopt);

class RemoteParaphraser final : public ParaphraseProvider {
 public:
  explicit RemoteParaphraser(std::string endpoint,
                             std::chrono::milliseconds timeout = kDefaultRemoteTimeout)
      : endpoint_(std::move(endpoint)), timeout_(timeout) {}

  VariantSet paraphrase(const std::string& sentence, std::size_t count,
                        std::uint64_t seed) const override {
    return remote_paraphrase(endpoint_, sentence, count, timeout_, seed);
  }
  std::string identity() const override { return "remote:" + endpoint_; }

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
};

struct ScoredVariant {
  std::size_t index = 0;
  std::string sentence;
  double similarity = 0.0;
};

/// Scores every variant by sdou against `original` and keeps the best
/// min(k, l), highest first; equal scores keep variant order.
std::vector<ScoredVariant> filter_top_k(const std::string& original, const VariantSet& variants,
                                        const EmbeddingProvider& provider, std::size_t k);

/// Maps a candidate sentence to the report a session transmitting it realizes.
using TransmissionTrial = std::function<DouReport(const std::string& candidate)>;

struct TransmissionChoice {
  std::size_t index = 0;  // 0 is the original
  std::string sentence;
  DouReport report;
};

/// Evaluates the original followed by every candidate and returns the one with
/// the lowest objective F; ties go to the earlier candidate. Trial failures
/// are rethrown as CandidateError.
TransmissionChoice select_best_transmission(const std::string& original,
                                            std::span<const std::string> candidates,
                                            const TransmissionTrial& trial);

}  // namespace semcom
