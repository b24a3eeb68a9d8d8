#include "clirgate/gateway/service.hpp"

#include <httplib.h>

#include "clirgate/error.hpp"

namespace clirgate::gateway {

namespace {

std::string error_body(const std::string& kind, const std::string& message) {
  return nlohmann::json{{"error", kind}, {"message", message}}.dump();
}

}  // namespace

TranslationService::TranslationService(Gateway& gateway)
    : gateway_(gateway), server_(std::make_unique<httplib::Server>()) {
  server_->Get("/translate", [this](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("q")) {
      res.status = 400;
      res.set_content(error_body("InvalidArgument", "missing query parameter q"), "application/json");
      return;
    }
    auto reply = translate(req.get_param_value("q"));
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  });
  server_->Get("/stats", [this](const httplib::Request&, httplib::Response& res) {
    auto reply = stats();
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  });
}

TranslationService::~TranslationService() { stop(); }

TranslationService::Response TranslationService::translate(std::string_view raw_query) {
  try {
    const auto result = gateway_.handle(raw_query);
    nlohmann::json body{{"t", result.text}, {"source", translators::to_string(result.source)},
                        {"latency_ms", result.latency_ms}};
    return {200, body.dump()};
  } catch (const Error& e) {
    const int status = e.kind() == ErrorKind::BackendUnavailable ? 503 : 400;
    return {status, error_body(std::string(to_string(e.kind())), e.what())};
  }
}

TranslationService::Response TranslationService::stats() const {
  return {200, gateway_.stats().to_json().dump()};
}

int TranslationService::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool TranslationService::serve() { return server_->listen_after_bind(); }

void TranslationService::stop() {
  if (server_) server_->stop();
}

}  // namespace clirgate::gateway
