#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "semcom/lexicon.hpp"
#include "semcom/pipeline.hpp"

namespace semcom {

class SentenceVector;

/// One sense choice per word unit, in unit order. nullopt = unresolved.
using MeaningSelection = std::vector<std::optional<SynsetId>>;

/// Per-unit agreement indicator v_i.
using MatchVector = std::vector<std::uint8_t>;

/// The sense each unit's first candidate names: the sender's default reading.
MeaningSelection first_sense_selection(std::span<const WordUnit> units);

/// Throws LengthMismatch when the selection was not built against `units`,
/// UnknownSynset when a resolved entry is not one of the unit's candidates.
void validate_selection(std::span<const WordUnit> units, const MeaningSelection& selection);

/// v_i = 1 iff both entries are resolved and equal. Throws LengthMismatch.
MatchVector match_vector(const MeaningSelection& sender, const MeaningSelection& receiver);

struct DifficultyVector {
  std::vector<double> values;
  /// The f_i and their sum when built from sense counts. wdou then divides
  /// once at the end, so a full match scores exactly 1.
  std::vector<double> counts;
  double total = 0.0;
};

/// d_i = f_i / sum_k f_k over the filtered units. Throws EmptyUnits.
DifficultyVector difficulty_vector(std::span<const WordUnit> units);
DifficultyVector difficulty_vector(std::span<const std::size_t> sense_counts);

std::vector<double> importance_vector(std::span<const WordUnit> units);

/// Word-level degree of understanding: sum of v_i * u_i * d_i.
/// Throws LengthMismatch, or DomainError when some u_i is outside [0,1].
double wdou(std::span<const std::uint8_t> match, std::span<const double> importance,
            const DifficultyVector& difficulty);

/// Sentence-level degree of understanding: cosine clamped to [0,1].
double sdou(const SentenceVector& a, const SentenceVector& b);

/// F = (1 - sim_w) + (1 - sim_s). Throws DomainError outside [0,1].
double objective(double sim_w, double sim_s);

struct WordDetail {
  std::uint8_t match = 0;
  double importance = 0.0;
  double difficulty = 0.0;
};

struct DouReport {
  double sim_w = 0.0;
  double sim_s = 0.0;
  double objective_f = 2.0;
  std::size_t rounds = 0;
  std::vector<WordDetail> word_detail;
  /// Receiver paraphrase scored against the reference sentence rather than
  /// S^s. Informational only; never enters F.
  std::optional<double> sim_s_original;
};

/// Builds a report whose objective satisfies the F identity by construction.
DouReport make_report(double sim_w, double sim_s, std::size_t rounds,
                      std::vector<WordDetail> detail = {});

/// Word-level DoU of a sender/receiver selection pair over `units`.
/// An empty unit list scores 1.0: there is nothing left to disambiguate.
struct WordLevelScore {
  double sim_w = 1.0;
  std::vector<WordDetail> detail;
};
WordLevelScore score_word_level(std::span<const WordUnit> units, const MeaningSelection& sender,
                                const MeaningSelection& receiver);

/// sum u_i * d_i, the value sim_w takes when every choice matches.
double full_match_score(std::span<const WordUnit> units);

}  // namespace semcom
