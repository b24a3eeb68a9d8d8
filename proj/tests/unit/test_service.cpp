#include <gtest/gtest.h>

#include <httplib.h>
#include <json.hpp>
#include <thread>

#include "clirgate/gateway/gateway.hpp"
#include "clirgate/gateway/service.hpp"
#include "clirgate/translators/translator.hpp"

using namespace clirgate::gateway;
using namespace clirgate::translators;
using nlohmann::json;

namespace {

struct ServiceFixture {
  std::shared_ptr<SimulatedTranslator> fast;
  std::shared_ptr<SimulatedTranslator> slow;
  Gateway gw;
  TranslationService service;

  static std::shared_ptr<SimulatedTranslator> make(double ms, const char* text, Provenance role) {
    TranslatorSpec spec;
    spec.name = "b";
    spec.latency = FixedLatency{ms};
    spec.table.emplace("dítě rýma", text);
    return std::make_shared<SimulatedTranslator>(spec, role);
  }

  ServiceFixture()
      : fast(make(10, "fever", Provenance::Fast)),
        slow(make(150, "runny nose", Provenance::Slow)),
        gw({}, fast, slow, std::make_shared<VirtualClock>()),
        service(gw) {}
};

}  // namespace

TEST(Service, TranslateHandlerBodies) {
  ServiceFixture f;
  auto r = f.service.translate("dítě rýma");
  EXPECT_EQ(r.status, 200);
  auto body = json::parse(r.body);
  EXPECT_EQ(body["t"], "fever");
  EXPECT_EQ(body["source"], "fast");
  EXPECT_EQ(body["latency_ms"], 10.0);

  f.gw.drain();
  body = json::parse(f.service.translate("dítě rýma").body);
  EXPECT_EQ(body["t"], "runny nose");
  EXPECT_EQ(body["source"], "cache");
}

TEST(Service, ErrorStatuses) {
  ServiceFixture f;
  auto r = f.service.translate("   ");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(json::parse(r.body)["error"], "EmptyAfterNormalization");
  f.fast->fail_next(1);
  r = f.service.translate("q");
  EXPECT_EQ(r.status, 503);
  EXPECT_EQ(json::parse(r.body)["error"], "BackendUnavailable");
}

TEST(Service, HttpRoundTrip) {
  ServiceFixture f;
  const int port = f.service.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::jthread server([&] { f.service.serve(); });

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  httplib::Result res;
  for (int attempt = 0; attempt < 50 && !(res = client.Get("/stats")); ++attempt) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);

  res = client.Get("/translate?q=d%C3%ADt%C4%9B%20r%C3%BDma");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["t"], "fever");

  res = client.Get("/translate");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);

  res = client.Get("/stats");
  ASSERT_TRUE(res);
  const auto stats = json::parse(res->body);
  EXPECT_EQ(stats["requests"], 1);
  EXPECT_EQ(stats["fast_served"], 1);

  f.service.stop();
}
