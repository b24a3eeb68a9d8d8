#include <fstream>
#include <sstream>

#include <json.hpp>

#include "clirgate/error.hpp"
#include "clirgate/translators/translator.hpp"

namespace clirgate::translators {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base_dir / path;
}

}  // namespace

TranslatorSpec parse_translator_spec(std::string_view json, const std::filesystem::path& base_dir) {
  try {
    const auto doc = nlohmann::json::parse(json);
    TranslatorSpec spec;
    spec.name = doc.at("name").get<std::string>();
    spec.seed = doc.value("seed", std::uint64_t{0});

    const auto& latency = doc.at("latency");
    const auto kind = latency.at("kind").get<std::string>();
    if (kind == "fixed") {
      spec.latency = FixedLatency{latency.at("ms").get<double>()};
    } else if (kind == "lognormal") {
      spec.latency = LogNormalLatency{latency.at("median_ms").get<double>(), latency.at("sigma").get<double>()};
    } else {
      throw Error(ErrorKind::FormatError, "unknown latency kind '" + kind + "'");
    }
    validate(spec.latency);

    if (doc.contains("table_path") && !doc["table_path"].is_null()) {
      spec.table = load_translation_table(resolve(base_dir, doc["table_path"].get<std::string>()));
    }

    const auto fallback = doc.value("fallback", nlohmann::json("echo"));
    if (fallback.is_string() && fallback.get<std::string>() == "echo") {
      spec.fallback = EchoFallback{};
    } else if (fallback.is_object() && fallback.at("kind").get<std::string>() == "token_map") {
      TokenMapFallback map;
      for (auto& [source, target] :
           load_translation_table(resolve(base_dir, fallback.at("dictionary_path").get<std::string>()))) {
        map.dictionary.emplace(source, target);
      }
      spec.fallback = std::move(map);
    } else {
      throw Error(ErrorKind::FormatError, "fallback must be \"echo\" or a token_map object");
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("bad translator spec: ") + e.what());
  }
}

TranslatorSpec load_translator_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::UnreadableSource, "cannot open translator spec '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_translator_spec(buf.str(), path.parent_path());
}

}  // namespace clirgate::translators
