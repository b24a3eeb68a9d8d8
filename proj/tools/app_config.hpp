#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace clirgate::cli {

/// The optional `--config` JSON document. Each section belongs to one
/// subcommand; command-line flags override whatever it sets.
class AppConfig {
 public:
  AppConfig() = default;

  /// Parses the file and checks that every file it references exists.
  static AppConfig load(const std::filesystem::path& path);

  /// Section by name, or an empty object.
  const nlohmann::json& section(const std::string& name) const;
  /// Resolves a path relative to the config file's directory.
  std::filesystem::path resolve(const std::string& path) const;

 private:
  nlohmann::json doc_ = nlohmann::json::object();
  std::filesystem::path base_dir_;
};

}  // namespace clirgate::cli
