#include "app_config.hpp"

#include <fstream>

#include "clirgate/error.hpp"

namespace clirgate::cli {

namespace {

void require_file(const AppConfig& config, const nlohmann::json& section, const char* key) {
  if (!section.contains(key) || !section[key].is_string()) return;
  const auto path = config.resolve(section[key].get<std::string>());
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorKind::InvalidArgument, std::string("config references missing file '") + path.string() + "'");
  }
}

}  // namespace

AppConfig AppConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config '" + path.string() + "'");
  AppConfig config;
  try {
    config.doc_ = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, "config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (!config.doc_.is_object()) throw Error(ErrorKind::InvalidArgument, "config must be a JSON object");
  config.base_dir_ = path.parent_path();

  require_file(config, config.section("translators"), "fast");
  require_file(config, config.section("translators"), "slow");
  require_file(config, config.section("serve"), "snapshot_in");
  if (const auto& workload = config.section("workload"); workload.contains("popularity")) {
    require_file(config, workload["popularity"], "path");
  }
  return config;
}

const nlohmann::json& AppConfig::section(const std::string& name) const {
  static const nlohmann::json kEmpty = nlohmann::json::object();
  auto it = doc_.find(name);
  return it == doc_.end() ? kEmpty : *it;
}

std::filesystem::path AppConfig::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  return p.is_absolute() || base_dir_.empty() ? p : base_dir_ / p;
}

}  // namespace clirgate::cli
