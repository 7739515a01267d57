#include "http_client.hpp"

#include <httplib.h>

#include "semcom/errors.hpp"

namespace semcom::detail {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path below the origin, without trailing slash
};

Endpoint split_endpoint(const std::string& url) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) throw TransportError("endpoint needs a scheme: " + url);
  if (url.compare(0, scheme, "http") != 0) {
    throw TransportError("only plain http endpoints are supported: " + url);
  }
  auto slash = url.find('/', scheme + 3);
  Endpoint ep;
  ep.origin = url.substr(0, slash);
  if (slash != std::string::npos) ep.prefix = url.substr(slash);
  while (!ep.prefix.empty() && ep.prefix.back() == '/') ep.prefix.pop_back();
  return ep;
}

}  // namespace

nlohmann::json post_json(const std::string& endpoint, const std::string& path,
                         const nlohmann::json& body, std::chrono::milliseconds timeout) {
  auto ep = split_endpoint(endpoint);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  auto res = client.Post(ep.prefix + path, body.dump(), "application/json");
  if (!res) {
    throw TransportError("POST " + endpoint + path + ": " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw ServerError(res->status, "POST " + endpoint + path + ": " + res->body);
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProtocolError("POST " + endpoint + path + ": malformed JSON: " + e.what());
  }
}

}  // namespace semcom::detail
