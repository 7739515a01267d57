#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

namespace semcom::detail {

/// POSTs `body` as JSON to `endpoint` + `path` and parses the reply.
/// Throws TransportError, ServerError (non-2xx) or ProtocolError (bad JSON).
nlohmann::json post_json(const std::string& endpoint, const std::string& path,
                         const nlohmann::json& body, std::chrono::milliseconds timeout);

}  // namespace semcom::detail
