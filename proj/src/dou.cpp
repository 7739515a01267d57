#include "semcom/dou.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcom/errors.hpp"
#include "semcom/similarity.hpp"

namespace semcom {

namespace {

void require_unit_range(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + " outside [0,1]");
}

}  // namespace

MeaningSelection first_sense_selection(std::span<const WordUnit> units) {
  MeaningSelection sel;
  sel.reserve(units.size());
  for (const auto& u : units) {
    sel.emplace_back(u.candidates.empty() ? std::nullopt : std::optional(u.candidates.front()));
  }
  return sel;
}

void validate_selection(std::span<const WordUnit> units, const MeaningSelection& selection) {
  if (units.size() != selection.size()) {
    throw LengthMismatch("selection has " + std::to_string(selection.size()) +
                         " entries for " + std::to_string(units.size()) + " word units");
  }
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (!selection[i]) continue;
    const auto& c = units[i].candidates;
    if (std::find(c.begin(), c.end(), *selection[i]) == c.end()) {
      throw UnknownSynset(to_string(*selection[i]) + " is not a sense of '" +
                          units[i].lookup_lemma + "'");
    }
  }
}

MatchVector match_vector(const MeaningSelection& sender, const MeaningSelection& receiver) {
  if (sender.size() != receiver.size()) {
    throw LengthMismatch("match_vector: " + std::to_string(sender.size()) + " vs " +
                         std::to_string(receiver.size()) + " entries");
  }
  MatchVector v(sender.size(), 0);
  for (std::size_t i = 0; i < sender.size(); ++i) {
    v[i] = (sender[i] && receiver[i] && *sender[i] == *receiver[i]) ? 1 : 0;
  }
  return v;
}

DifficultyVector difficulty_vector(std::span<const std::size_t> sense_counts) {
  if (sense_counts.empty()) throw EmptyUnits("difficulty vector of an empty unit list");
  double total = 0.0;
  for (auto f : sense_counts) total += static_cast<double>(f);
  DifficultyVector d;
  d.values.reserve(sense_counts.size());
  for (auto f : sense_counts) {
    d.values.push_back(static_cast<double>(f) / total);
    d.counts.push_back(static_cast<double>(f));
  }
  d.total = total;
  return d;
}

DifficultyVector difficulty_vector(std::span<const WordUnit> units) {
  std::vector<std::size_t> counts;
  counts.reserve(units.size());
  for (const auto& u : units) counts.push_back(u.sense_count());
  return difficulty_vector(counts);
}

std::vector<double> importance_vector(std::span<const WordUnit> units) {
  std::vector<double> u;
  u.reserve(units.size());
  for (const auto& unit : units) u.push_back(unit.importance);
  return u;
}

double wdou(std::span<const std::uint8_t> match, std::span<const double> importance,
            const DifficultyVector& difficulty) {
  if (match.size() != importance.size() || match.size() != difficulty.values.size()) {
    throw LengthMismatch("wdou: v, u and d must have equal lengths");
  }
  const bool exact = difficulty.counts.size() == match.size() && difficulty.total > 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < match.size(); ++i) {
    if (match[i] > 1) throw DomainError("match entries must be 0 or 1");
    require_unit_range(importance[i], "importance");
    const double d = exact ? difficulty.counts[i] : difficulty.values[i];
    sum += static_cast<double>(match[i]) * importance[i] * d;
  }
  return exact ? sum / difficulty.total : sum;
}

double sdou(const SentenceVector& a, const SentenceVector& b) {
  return std::clamp(cosine(a, b), 0.0, 1.0);
}

double objective(double sim_w, double sim_s) {
  require_unit_range(sim_w, "sim_w");
  require_unit_range(sim_s, "sim_s");
  return (1.0 - sim_w) + (1.0 - sim_s);
}

DouReport make_report(double sim_w, double sim_s, std::size_t rounds,
                      std::vector<WordDetail> detail) {
  DouReport r;
  r.objective_f = objective(sim_w, sim_s);
  r.sim_w = sim_w;
  r.sim_s = sim_s;
  r.rounds = rounds;
  r.word_detail = std::move(detail);
  return r;
}

WordLevelScore score_word_level(std::span<const WordUnit> units, const MeaningSelection& sender,
                                const MeaningSelection& receiver) {
  if (sender.size() != units.size()) {
    throw LengthMismatch("sender selection does not match the word units");
  }
  auto v = match_vector(sender, receiver);
  if (units.empty()) return {};
  auto u = importance_vector(units);
  auto d = difficulty_vector(units);

  WordLevelScore score;
  // Rounding can push an all-match sum a hair above 1.
  score.sim_w = std::min(1.0, wdou(v, u, d));
  score.detail.reserve(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) score.detail.push_back({v[i], u[i], d.values[i]});
  return score;
}

double full_match_score(std::span<const WordUnit> units) {
  if (units.empty()) return 1.0;
  auto d = difficulty_vector(units);
  MatchVector ones(units.size(), 1);
  return std::min(1.0, wdou(ones, importance_vector(units), d));
}

}  // namespace semcom
