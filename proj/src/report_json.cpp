#include "semcom/report_json.hpp"

#include "semcom/errors.hpp"

namespace semcom {

nlohmann::json to_json(const DouReport& r) {
  nlohmann::json detail = nlohmann::json::array();
  for (const auto& d : r.word_detail) {
    detail.push_back({{"match", d.match}, {"importance", d.importance}, {"difficulty", d.difficulty}});
  }
  nlohmann::json out{{"sim_w", r.sim_w},
                     {"sim_s", r.sim_s},
                     {"objective_f", r.objective_f},
                     {"rounds", r.rounds},
                     {"word_detail", std::move(detail)}};
  if (r.sim_s_original) out["sim_s_original"] = *r.sim_s_original;
  return out;
}

nlohmann::json to_json(const SessionReport& r) {
  nlohmann::json transcript = nlohmann::json::array();
  for (const auto& e : r.transcript) {
    transcript.push_back({{"direction", e.direction == Direction::sent ? "sent" : "received"},
                          {"frame_type", to_string(e.type)},
                          {"bytes", e.bytes}});
  }
  return {{"dou", to_json(r.dou)},
          {"checksum_matched", r.checksum_matched},
          {"rounds", r.rounds},
          {"transcript", std::move(transcript)}};
}

nlohmann::json to_json(const LexicalDatabase& db, std::string_view lemma) {
  auto key = normalize_lemma(lemma);
  auto senses = db.senses(key);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& id : senses) {
    const auto& s = db.synset(id);
    nlohmann::json synonyms = nlohmann::json::array();
    for (const auto& l : s.lemmas) {
      if (l != key) synonyms.push_back(l);
    }
    nlohmann::json hypernyms = nlohmann::json::array();
    for (const auto& h : s.hypernyms) hypernyms.push_back(to_string(h));
    list.push_back({{"id", to_string(id)},
                    {"lemmas", s.lemmas},
                    {"synonyms", std::move(synonyms)},
                    {"gloss", s.gloss},
                    {"hypernyms", std::move(hypernyms)}});
  }
  return {{"lemma", key}, {"sense_count", senses.size()}, {"senses", std::move(list)}};
}

MeaningSelection selection_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw FormatError("selection", 1, "expected a JSON array");
  MeaningSelection sel;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_null()) {
      sel.emplace_back();
      continue;
    }
    std::optional<SynsetId> id;
    if (j[i].is_string()) id = parse_synset_id(j[i].get<std::string>());
    if (!id) throw FormatError("selection", 1, "entry " + std::to_string(i) + " is not p:dddddddd");
    sel.emplace_back(*id);
  }
  return sel;
}

nlohmann::json selection_to_json(const MeaningSelection& sel) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : sel) {
    if (e) out.push_back(to_string(*e));
    else out.push_back(nullptr);
  }
  return out;
}

}  // namespace semcom
