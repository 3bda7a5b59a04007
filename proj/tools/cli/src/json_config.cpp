#include "json_config.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace tula::cli {
namespace {

std::string as_input(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

nlohmann::json from_text(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  if (!s.empty() && (s.front() == '{' || s.front() == '[')) {
    auto j = nlohmann::json::parse(s, nullptr, false);
    if (!j.is_discarded()) return j;
  }
  const char* end = s.data() + s.size();
  long long i = 0;
  if (auto r = std::from_chars(s.data(), end, i); r.ec == std::errc() && r.ptr == end) return i;
  double d = 0.0;
  if (auto r = std::from_chars(s.data(), end, d); r.ec == std::errc() && r.ptr == end) return d;
  return s;
}

const CLI::App* selected(const CLI::App& root) {
  auto subs = root.get_subcommands();
  return subs.empty() ? nullptr : subs.front();
}

}  // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  const auto j = nlohmann::json::parse(input);
  if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
  const CLI::App* sub = selected(root_);
  std::vector<CLI::ConfigItem> items;
  for (const auto& [key, value] : j.items()) {
    if (value.is_null()) continue;
    CLI::ConfigItem item;
    if (sub) item.parents = {sub->get_name()};
    item.name = key;
    if (value.is_array() && std::none_of(value.begin(), value.end(), [](const auto& e) {
          return e.is_object() || e.is_array();
        })) {
      for (const auto& e : value) item.inputs.push_back(as_input(e));
    } else {
      item.inputs.push_back(as_input(value));
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::string JsonConfig::to_config(const CLI::App* app, bool, bool, std::string) const {
  const CLI::App* sub = selected(app ? *app : root_);
  return sub ? options_to_json(*sub).dump(2) : "{}";
}

nlohmann::json options_to_json(const CLI::App& sub) {
  nlohmann::json j = nlohmann::json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names.front() == "help" || names.front() == "config") continue;
    std::vector<std::string> values = opt->results();
    const bool multi = opt->get_items_expected_max() > 1;
    if (values.empty()) {
      if (multi) continue;
      const std::string def = opt->get_default_str();
      if (def.empty()) continue;
      values.push_back(def);
    }
    if (multi) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& v : values) arr.push_back(from_text(v));
      j[names.front()] = arr;
    } else {
      j[names.front()] = from_text(values.back());
    }
  }
  return j;
}

}  // namespace tula::cli
