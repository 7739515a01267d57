#pragma once

#include <json.hpp>

#include "semcom/dou.hpp"
#include "semcom/lexicon.hpp"
#include "semcom/session.hpp"

namespace semcom {

// Schema-stable JSON views. Keys are only ever added.

nlohmann::json to_json(const DouReport& report);
nlohmann::json to_json(const SessionReport& report);
nlohmann::json to_json(const LexicalDatabase& db, std::string_view lemma);

/// Array of "p:dddddddd" strings or nulls. Throws FormatError.
MeaningSelection selection_from_json(const nlohmann::json& j);
nlohmann::json selection_to_json(const MeaningSelection& sel);

}  // namespace semcom
