#include <gtest/gtest.h>

#include <algorithm>
#include <thread>

#include "clirgate/translators/clock.hpp"
#include "clirgate/translators/translator.hpp"
#include "error_matchers.hpp"
#include "temp_dir.hpp"

using namespace clirgate::translators;
using clirgate::ErrorKind;
using clirgate::clickstream::normalize;

namespace {

TranslatorSpec spec(double ms, std::string text) {
  TranslatorSpec s;
  s.name = "test";
  s.latency = FixedLatency{ms};
  s.table.emplace("dítě rýma", std::move(text));
  return s;
}

}  // namespace

TEST(Translator, FastTableEntry) {
  SimulatedTranslator fast(spec(10, "fever"), Provenance::Fast);
  VirtualClock clock;
  const auto r = fast.translate(normalize("dítě rýma"), clock);
  EXPECT_EQ(r, (TranslationResult{"fever", Provenance::Fast, 10.0}));
  EXPECT_EQ(clock.now_ms(), 10.0);
}

TEST(Translator, SlowTableEntry) {
  SimulatedTranslator slow(spec(150, "runny nose"), Provenance::Slow);
  VirtualClock clock;
  EXPECT_EQ(slow.translate(normalize("Dítě  Rýma"), clock),
            (TranslationResult{"runny nose", Provenance::Slow, 150.0}));
}

TEST(Translator, EchoFallback) {
  SimulatedTranslator fast(spec(10, "fever"), Provenance::Fast);
  VirtualClock clock;
  EXPECT_EQ(fast.translate(normalize("xyz"), clock), (TranslationResult{"xyz", Provenance::Fast, 10.0}));
}

TEST(Translator, TokenMapFallback) {
  auto s = spec(10, "fever");
  s.fallback = TokenMapFallback{{{"dítě", "child"}, {"kašel", "cough"}}};
  SimulatedTranslator t(s, Provenance::Fast);
  EXPECT_EQ(t.lookup(normalize("dítě kašel zima")), "child cough zima");
}

TEST(Translator, Deterministic) {
  auto s = spec(10, "fever");
  s.latency = LogNormalLatency{150, 0.3};
  s.seed = 99;
  SimulatedTranslator a(s, Provenance::Slow);
  SimulatedTranslator b(s, Provenance::Slow);
  VirtualClock c1;
  VirtualClock c2;
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(a.translate(normalize("dítě rýma"), c1), b.translate(normalize("dítě rýma"), c2));
  }
}

TEST(Translator, FixedLatencyLaw) {
  SimulatedTranslator t(spec(37.5, "x"), Provenance::Fast);
  for (std::uint64_t i = 0; i < 1000; ++i) EXPECT_EQ(t.draw_latency(i), 37.5);
}

TEST(Translator, LogNormalMedianWithinFivePercent) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto s = spec(10, "x");
    s.latency = LogNormalLatency{150, 0.5};
    s.seed = seed;
    SimulatedTranslator t(s, Provenance::Slow);
    std::vector<double> draws;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
      draws.push_back(t.draw_latency(i));
      ASSERT_GT(draws.back(), 0);
    }
    std::nth_element(draws.begin(), draws.begin() + 5000, draws.end());
    EXPECT_NEAR(draws[5000], 150.0, 7.5);
  }
}

TEST(Translator, InvalidLatencyRejected) {
  EXPECT_ERROR_KIND(validate(FixedLatency{-1}), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(validate(LogNormalLatency{0, 0.3}), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(validate(LogNormalLatency{10, -0.1}), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(SimulatedTranslator(spec(-5, "x"), Provenance::Fast), ErrorKind::InvalidArgument);
}

TEST(Translator, FailNextInjectsFaults) {
  SimulatedTranslator t(spec(10, "x"), Provenance::Slow);
  VirtualClock clock;
  t.fail_next(2);
  EXPECT_ERROR_KIND(t.translate(normalize("q"), clock), ErrorKind::BackendUnavailable);
  EXPECT_ERROR_KIND(t.translate(normalize("q"), clock), ErrorKind::BackendUnavailable);
  EXPECT_NO_THROW(t.translate(normalize("q"), clock));
  EXPECT_EQ(t.calls(), 3u);
}

TEST(Translator, FailureProbabilityIsDeterministic) {
  auto run = [] {
    SimulatedTranslator t(spec(1, "x"), Provenance::Slow);
    t.set_failure_probability(0.3);
    VirtualClock clock;
    std::vector<bool> failed;
    for (int i = 0; i < 1000; ++i) {
      try {
        t.translate(normalize("q"), clock);
        failed.push_back(false);
      } catch (const clirgate::Error&) {
        failed.push_back(true);
      }
    }
    return failed;
  };
  const auto a = run();
  EXPECT_EQ(a, run());
  const auto failures = std::count(a.begin(), a.end(), true);
  EXPECT_GT(failures, 240);
  EXPECT_LT(failures, 360);
}

TEST(Translator, ConcurrentCallsAgreeOnText) {
  SimulatedTranslator t(spec(0, "fever"), Provenance::Fast);
  std::vector<std::jthread> threads;
  std::atomic<int> mismatches{0};
  for (int w = 0; w < 4; ++w) {
    threads.emplace_back([&] {
      VirtualClock clock;
      for (int i = 0; i < 500; ++i) {
        if (t.translate(normalize("dítě rýma"), clock).text != "fever") ++mismatches;
      }
    });
  }
  threads.clear();
  EXPECT_EQ(mismatches.load(), 0);
  EXPECT_EQ(t.calls(), 2000u);
}

TEST(Clock, VirtualAndFork) {
  VirtualClock clock(5);
  clock.wait_ms(10);
  EXPECT_EQ(clock.now_ms(), 15);
  auto forked = clock.fork();
  forked->wait_ms(100);
  EXPECT_EQ(clock.now_ms(), 15);
  EXPECT_EQ(forked->now_ms(), 115);
  EXPECT_TRUE(clock.is_virtual());
}

TEST(Clock, WallClockSleeps) {
  WallClock clock;
  const double start = clock.now_ms();
  clock.wait_ms(20);
  EXPECT_GE(clock.now_ms() - start, 19.0);
  EXPECT_FALSE(clock.is_virtual());
}

TEST(SpecFile, LoadsJsonWithRelativeTable) {
  testing_support::TempDir dir;
  dir.write("table.tsv", "Dítě Rýma\trunny nose\n");
  dir.write("dict.tsv", "dítě\tchild\n");
  const auto path = dir.write("slow.json", R"({"name":"nmt","seed":4,
    "latency":{"kind":"lognormal","median_ms":150,"sigma":0.3},
    "table_path":"table.tsv","fallback":{"kind":"token_map","dictionary_path":"dict.tsv"}})");
  const auto s = load_translator_spec(path);
  EXPECT_EQ(s.name, "nmt");
  EXPECT_EQ(s.seed, 4u);
  EXPECT_EQ(s.table.at("dítě rýma"), "runny nose");
  SimulatedTranslator t(s, Provenance::Slow);
  EXPECT_EQ(t.lookup(normalize("dítě")), "child");
}

TEST(SpecFile, Errors) {
  EXPECT_ERROR_KIND(parse_translator_spec("{", "."), ErrorKind::FormatError);
  EXPECT_ERROR_KIND(parse_translator_spec(R"({"name":"x","latency":{"kind":"gamma"}})", "."), ErrorKind::FormatError);
  EXPECT_ERROR_KIND(parse_translator_spec(R"({"name":"x","latency":{"kind":"fixed","ms":1},"fallback":"none"})", "."),
                    ErrorKind::FormatError);
  EXPECT_ERROR_KIND(load_translator_spec("/nonexistent/spec.json"), ErrorKind::UnreadableSource);
  EXPECT_ERROR_KIND(
      parse_translator_spec(R"({"name":"x","latency":{"kind":"fixed","ms":1},"table_path":"/nonexistent.tsv"})", "."),
      ErrorKind::UnreadableSource);
}
