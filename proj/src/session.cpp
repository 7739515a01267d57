#include "semcom/session.hpp"

#include <algorithm>
#include <deque>

#include "semcom/errors.hpp"
#include "semcom/random.hpp"

namespace semcom {

namespace {

// Stream tags for the sender's own random draws.
constexpr std::uint64_t kSenderParaphraseStream = 0x5e5d;
constexpr std::uint64_t kRetryStream = 0x7e77;

[[noreturn]] void unexpected(const char* who, const Frame& f) {
  throw ProtocolError(std::string(who) + " did not expect " + to_string(frame_type(f)));
}

}  // namespace

Transmission first_sense_transmission(SharedKnowledge kb, std::string sentence) {
  auto units = extract_word_units(kb.lexicon, kb.stopwords, sentence);
  return {std::move(sentence), first_sense_selection(units), std::nullopt};
}

// --- sender ---------------------------------------------------------------

SenderSession::SenderSession(SharedKnowledge kb, Transmission tx, SenderProviders providers,
                             SessionPolicy policy)
    : kb_(kb), providers_(providers), policy_(policy) {
  if (policy_.max_rounds == 0) throw DomainError("max_rounds must be at least 1");
  current_ = std::move(tx.sentence);
  units_ = extract_word_units(kb_.lexicon, kb_.stopwords, current_);
  selection_ = std::move(tx.selection);
  validate_selection(units_, selection_);

  if (tx.reference && *tx.reference != current_) {
    reference_ = std::move(*tx.reference);
    reference_selection_ =
        first_sense_selection(extract_word_units(kb_.lexicon, kb_.stopwords, reference_));
  } else {
    reference_ = current_;
    reference_selection_ = selection_;
  }
  reference_vector_ = providers_.embedder.embed_one(reference_);

  if (policy_.sender_mode == SenderMode::paraphrase && providers_.paraphraser) {
    auto v = providers_.paraphraser->paraphrase(reference_, 1,
                                                derive_seed(policy_.seed, {kSenderParaphraseStream}));
    sender_sentence_ = v.variants.at(0);
    sender_vector_ = providers_.embedder.embed_one(sender_sentence_);
  } else {
    sender_sentence_ = reference_;
    sender_vector_ = reference_vector_;
  }
}

void SenderSession::record(Direction d, const Frame& f) {
  report_.transcript.push_back({d, frame_type(f), encoded_size(f)});
}

Frame SenderSession::transmission_frame(bool retry) {
  auto checksum = compute_checksum(selection_);
  if (retry) return RetryFrame{current_, std::move(checksum)};
  return DataFrame{current_, std::move(checksum)};
}

std::vector<Frame> SenderSession::start() {
  if (state_ != State::idle) throw ProtocolError("sender session already started");
  report_.rounds = 1;
  std::vector<Frame> out{transmission_frame(false)};
  record(Direction::sent, out.back());
  state_ = State::awaiting_verdict;
  return out;
}

std::vector<Frame> SenderSession::on_frame(const Frame& frame) {
  record(Direction::received, frame);
  switch (state_) {
    case State::awaiting_verdict:
      if (std::holds_alternative<AckFrame>(frame)) {
        matched_ = true;
        word_ = score_word_level(units_, selection_, selection_);
        misread_.clear();
      } else if (auto* nack = std::get_if<NackFrame>(&frame)) {
        if (nack->checksum.entries.size() != units_.size()) {
          throw ProtocolError("NACK carries " + std::to_string(nack->checksum.entries.size()) +
                              " entries for " + std::to_string(units_.size()) + " word units");
        }
        matched_ = false;
        auto theirs = to_selection(nack->checksum.entries);
        word_ = score_word_level(units_, selection_, theirs);
        misread_.clear();
        for (std::size_t i = 0; i < units_.size(); ++i) {
          if (!word_.detail[i].match) misread_.insert(units_[i].lookup_lemma);
        }
      } else {
        unexpected("sender", frame);
      }
      state_ = State::awaiting_paraphrase;
      return {};
    case State::awaiting_paraphrase:
      if (auto* p = std::get_if<ParaphraseFrame>(&frame)) return finish_round(p->sentence);
      unexpected("sender", frame);
    default:
      unexpected("sender", frame);
  }
}

DouReport SenderSession::estimate(const std::string& candidate) const {
  auto units = extract_word_units(kb_.lexicon, kb_.stopwords, candidate);
  double sim_w = 1.0;
  if (!units.empty()) {
    MatchVector v(units.size(), 1);
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (misread_.count(units[i].lookup_lemma)) v[i] = 0;
    }
    sim_w = std::min(1.0, wdou(v, importance_vector(units), difficulty_vector(units)));
  }
  double sim_s = sdou(providers_.embedder.embed_one(candidate), reference_vector_);
  return make_report(sim_w, sim_s, report_.rounds);
}

std::vector<Frame> SenderSession::finish_round(const std::string& receiver_sentence) {
  auto receiver_vector = providers_.embedder.embed_one(receiver_sentence);
  double sim_s = sdou(sender_vector_, receiver_vector);
  report_.dou = make_report(word_.sim_w, sim_s, report_.rounds, word_.detail);
  report_.dou.sim_s_original = sdou(reference_vector_, receiver_vector);
  report_.checksum_matched = matched_;

  std::vector<Frame> out{DouReportFrame{word_.sim_w, sim_s}};
  record(Direction::sent, out.back());

  bool retry = report_.dou.objective_f > policy_.f_threshold &&
               report_.rounds < policy_.max_rounds && providers_.paraphraser != nullptr;
  if (retry) {
    auto variants = providers_.paraphraser->paraphrase(
        reference_, policy_.variant_count, derive_seed(policy_.seed, {kRetryStream, report_.rounds}));
    auto top = filter_top_k(reference_, variants, providers_.embedder, policy_.top_k);
    std::vector<std::string> candidates;
    candidates.reserve(top.size());
    for (auto& t : top) candidates.push_back(std::move(t.sentence));

    // The sentence just sent is judged by what it realized, the rest by estimate.
    auto choice = select_best_transmission(reference_, candidates, [&](const std::string& c) {
      return c == current_ ? report_.dou : estimate(c);
    });
    if (choice.sentence != current_) {
      current_ = std::move(choice.sentence);
      units_ = extract_word_units(kb_.lexicon, kb_.stopwords, current_);
      selection_ = choice.index == 0 ? reference_selection_ : first_sense_selection(units_);
      ++report_.rounds;
      out.push_back(transmission_frame(true));
      record(Direction::sent, out.back());
      state_ = State::awaiting_verdict;
      return out;
    }
  }
  out.push_back(CloseFrame{});
  record(Direction::sent, out.back());
  state_ = State::done;
  return out;
}

// --- receiver -------------------------------------------------------------

Interpretation PerfectReceiver::interpret(const ReceivedMessage& msg) {
  return {to_selection(msg.sender_entries), std::string(msg.sentence)};
}

ReceiverSession::ReceiverSession(SharedKnowledge kb, ReceiverBehavior& behavior)
    : kb_(kb), behavior_(behavior) {}

void ReceiverSession::record(Direction d, const Frame& f) {
  report_.transcript.push_back({d, frame_type(f), encoded_size(f)});
}

std::vector<Frame> ReceiverSession::on_frame(const Frame& frame) {
  record(Direction::received, frame);
  if (auto* d = std::get_if<DataFrame>(&frame); d && state_ == State::awaiting_transmission) {
    return on_transmission(d->sentence, d->checksum);
  }
  if (auto* r = std::get_if<RetryFrame>(&frame); r && state_ == State::awaiting_decision) {
    return on_transmission(r->sentence, r->checksum);
  }
  if (auto* rep = std::get_if<DouReportFrame>(&frame); rep && state_ == State::awaiting_report) {
    report_.dou = make_report(sim_w_, rep->sim_s, report_.rounds, detail_);
    state_ = State::awaiting_decision;
    return {};
  }
  if (std::holds_alternative<CloseFrame>(frame) && state_ == State::awaiting_decision) {
    state_ = State::done;
    return {};
  }
  unexpected("receiver", frame);
}

std::vector<Frame> ReceiverSession::on_transmission(const std::string& sentence,
                                                    const SemanticChecksum& sc) {
  ++report_.rounds;
  auto units = extract_word_units(kb_.lexicon, kb_.stopwords, sentence);
  if (sc.entries.size() != units.size()) {
    throw ProtocolError("transmission carries " + std::to_string(sc.entries.size()) +
                        " entries for " + std::to_string(units.size()) + " word units");
  }
  auto interp = behavior_.interpret({sentence, units, sc.entries, report_.rounds});
  auto& sel = interp.selection;
  if (sel.size() != units.size()) {
    throw LengthMismatch("receiver behavior returned a selection of the wrong length");
  }
  // Best guess for anything left open, so the checksum is always computable.
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (!sel[i]) sel[i] = units[i].candidates.front();
  }
  validate_selection(units, sel);

  auto mine = compute_checksum(sel);
  bool matched = mine.digest == sc.digest;
  auto word = matched ? score_word_level(units, sel, sel)
                      : score_word_level(units, to_selection(sc.entries), sel);
  sim_w_ = word.sim_w;
  detail_ = std::move(word.detail);
  report_.checksum_matched = matched;

  std::vector<Frame> out;
  if (matched) out.emplace_back(AckFrame{});
  else out.emplace_back(NackFrame{std::move(mine)});
  out.emplace_back(ParaphraseFrame{std::move(interp.sentence)});
  for (const auto& f : out) record(Direction::sent, f);
  state_ = State::awaiting_report;
  return out;
}

// --- drivers --------------------------------------------------------------

SessionReport sender_run(SharedKnowledge kb, Transmission tx, SenderProviders providers,
                         const SessionPolicy& policy, Channel& channel) {
  SenderSession s(kb, std::move(tx), providers, policy);
  for (const auto& f : s.start()) channel.send(f);
  while (!s.done()) {
    for (const auto& f : s.on_frame(channel.receive())) channel.send(f);
  }
  return s.report();
}

SessionReport receiver_run(SharedKnowledge kb, ReceiverBehavior& behavior, Channel& channel) {
  ReceiverSession r(kb, behavior);
  while (!r.done()) {
    for (const auto& f : r.on_frame(channel.receive())) channel.send(f);
  }
  return r.report();
}

LocalSession run_local_session(SharedKnowledge kb, Transmission tx, SenderProviders providers,
                               const SessionPolicy& policy, ReceiverBehavior& behavior) {
  FrameCodec codec(kb.stopwords.digest_prefix());
  SenderSession s(kb, std::move(tx), providers, policy);
  ReceiverSession r(kb, behavior);
  std::deque<std::vector<std::uint8_t>> to_receiver, to_sender;

  for (const auto& f : s.start()) to_receiver.push_back(codec.encode(f));
  while (!(s.done() && r.done())) {
    if (!to_receiver.empty()) {
      auto frame = codec.decode(to_receiver.front());
      to_receiver.pop_front();
      for (const auto& f : r.on_frame(frame)) to_sender.push_back(codec.encode(f));
    } else if (!to_sender.empty()) {
      auto frame = codec.decode(to_sender.front());
      to_sender.pop_front();
      for (const auto& f : s.on_frame(frame)) to_receiver.push_back(codec.encode(f));
    } else {
      throw ProtocolError("session stalled with no frames in flight");
    }
  }
  return {s.report(), r.report()};
}

}  // namespace semcom
