#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "clirgate/gateway/gateway.hpp"

namespace httplib {
class Server;
}

namespace clirgate::gateway {

/// HTTP front end for a Gateway:
///   GET /translate?q=<urlencoded>  -> {"t": ..., "source": "cache"|"fast", "latency_ms": ...}
///   GET /stats                     -> GatewayStats as JSON
class TranslationService {
 public:
  struct Response {
    int status = 200;
    std::string body;
  };

  explicit TranslationService(Gateway& gateway);
  ~TranslationService();

  TranslationService(const TranslationService&) = delete;
  TranslationService& operator=(const TranslationService&) = delete;

  /// Request handlers, usable without a socket.
  Response translate(std::string_view raw_query);
  Response stats() const;

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after a successful bind.
  bool serve();
  void stop();

 private:
  Gateway& gateway_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace clirgate::gateway
