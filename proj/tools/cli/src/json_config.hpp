#pragma once

// JSON experiment files for CLI11. A file is a flat object keyed by long
// flag names and applies to the subcommand being run; nested objects (e.g. a
// transform) are passed to their option as JSON text.

#include "CLI11.hpp"

#include <nlohmann/json.hpp>

namespace tula::cli {

class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App& root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

 private:
  const CLI::App& root_;
};

/// The options of `sub` that were given or have a default, as a flat object
/// that from_config reads back to the same settings.
nlohmann::json options_to_json(const CLI::App& sub);

}  // namespace tula::cli
