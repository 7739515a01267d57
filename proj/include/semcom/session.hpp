#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semcom/channel.hpp"
#include "semcom/dou.hpp"
#include "semcom/paraphrase.hpp"
#include "semcom/pipeline.hpp"
#include "semcom/protocol.hpp"
#include "semcom/similarity.hpp"

namespace semcom {

enum class Direction : std::uint8_t { sent, received };

struct TranscriptEntry {
  Direction direction = Direction::sent;
  FrameType type = FrameType::data;
  std::size_t bytes = 0;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct SessionReport {
  DouReport dou;
  bool checksum_matched = false;
  std::size_t rounds = 0;
  std::vector<TranscriptEntry> transcript;
};

/// How the sender produces S^s, its own rendering of the meaning it holds.
enum class SenderMode : std::uint8_t {
  original,    // S^s is the reference sentence itself
  paraphrase,  // S^s is one variant of it from the sender's paraphraser
};

struct SessionPolicy {
  std::size_t max_rounds = 3;
  double f_threshold = 0.1;
  SenderMode sender_mode = SenderMode::paraphrase;
  std::size_t variant_count = kDefaultVariantCount;
  std::size_t top_k = kDefaultTopK;
  std::uint64_t seed = 0;
};

/// The paraphraser is optional. Without one the sender falls back to the
/// original mode and never retries.
struct SenderProviders {
  const EmbeddingProvider& embedder;
  const ParaphraseProvider* paraphraser = nullptr;
};

struct Transmission {
  std::string sentence;
  /// The sender's sense choice per word unit of `sentence`.
  MeaningSelection selection;
  /// Sentence whose meaning the sender holds, when it differs from the one
  /// put on the wire (a rewrite chosen by the sender). Defaults to `sentence`.
  std::optional<std::string> reference;
};

/// Sender state machine without I/O: feed it frames, send what it returns.
class SenderSession {
 public:
  SenderSession(SharedKnowledge kb, Transmission tx, SenderProviders providers,
                SessionPolicy policy);

  std::vector<Frame> start();
  std::vector<Frame> on_frame(const Frame& frame);

  bool done() const noexcept { return state_ == State::done; }
  const SessionReport& report() const noexcept { return report_; }
  const std::string& sender_sentence() const noexcept { return sender_sentence_; }

 private:
  enum class State { idle, awaiting_verdict, awaiting_paraphrase, done };

  Frame transmission_frame(bool retry);
  std::vector<Frame> finish_round(const std::string& receiver_sentence);
  DouReport estimate(const std::string& candidate) const;
  void record(Direction d, const Frame& f);

  SharedKnowledge kb_;
  SenderProviders providers_;
  SessionPolicy policy_;
  std::string reference_;
  MeaningSelection reference_selection_;
  SentenceVector reference_vector_;
  std::string sender_sentence_;
  SentenceVector sender_vector_;

  std::string current_;
  std::vector<WordUnit> units_;
  MeaningSelection selection_;
  WordLevelScore word_;
  bool matched_ = false;
  // Lemmas the receiver read differently in the latest NACK.
  std::set<std::string> misread_;

  State state_ = State::idle;
  SessionReport report_;
};

/// What the receiver's model of the world sees of one transmission.
struct ReceivedMessage {
  std::string_view sentence;
  std::span<const WordUnit> units;
  std::span<const SynsetId> sender_entries;
  std::size_t round = 1;
};

struct Interpretation {
  MeaningSelection selection;
  std::string sentence;  // U^r, echoed back in PARAPHRASE
};

class ReceiverBehavior {
 public:
  virtual ~ReceiverBehavior() = default;
  virtual Interpretation interpret(const ReceivedMessage& msg) = 0;
};

/// Reads every word as the sender meant it and echoes the sentence.
class PerfectReceiver final : public ReceiverBehavior {
 public:
  Interpretation interpret(const ReceivedMessage& msg) override;
};

class ReceiverSession {
 public:
  ReceiverSession(SharedKnowledge kb, ReceiverBehavior& behavior);

  std::vector<Frame> on_frame(const Frame& frame);

  bool done() const noexcept { return state_ == State::done; }
  const SessionReport& report() const noexcept { return report_; }

 private:
  enum class State { awaiting_transmission, awaiting_report, awaiting_decision, done };

  std::vector<Frame> on_transmission(const std::string& sentence, const SemanticChecksum& sc);
  void record(Direction d, const Frame& f);

  SharedKnowledge kb_;
  ReceiverBehavior& behavior_;
  State state_ = State::awaiting_transmission;
  double sim_w_ = 0.0;
  std::vector<WordDetail> detail_;
  SessionReport report_;
};

SessionReport sender_run(SharedKnowledge kb, Transmission tx, SenderProviders providers,
                         const SessionPolicy& policy, Channel& channel);

SessionReport receiver_run(SharedKnowledge kb, ReceiverBehavior& behavior, Channel& channel);

struct LocalSession {
  SessionReport sender;
  SessionReport receiver;
};

/// Runs both endpoints on the calling thread, passing every frame through the
/// codec as bytes.
LocalSession run_local_session(SharedKnowledge kb, Transmission tx, SenderProviders providers,
                               const SessionPolicy& policy, ReceiverBehavior& behavior);

/// Transmission of `sentence` with every unit read in its first sense.
Transmission first_sense_transmission(SharedKnowledge kb, std::string sentence);

}  // namespace semcom
