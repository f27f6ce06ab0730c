// config.hpp — Key-value configuration text
//
// Format: `key = value` lines grouped under `[section]` headers, `#`
// comments, blank lines ignored. Keys address as "section.key" (top-level
// keys have no section prefix). Values are scalars, comma-separated lists,
// or inclusive ranges `start:step:stop`. The token `inf` in a site list is
// the thermodynamic-limit sentinel.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spinbath/errors.hpp"

namespace spinbath::sweep {

struct config_error : std::runtime_error {
    config_error(const std::string& msg, int line_no, int column_no)
        : std::runtime_error("config:" + std::to_string(line_no) + ":" +
                             std::to_string(column_no) + ": " + msg),
          line(line_no),
          column(column_no) {}
    config_error(const std::string& msg, std::string key_path)
        : std::runtime_error("config key '" + key_path + "': " + msg),
          key(std::move(key_path)) {}

    int line{0};
    int column{0};
    std::string key;
};

struct ConfigValue {
    std::string text;
    int line{0};
    int column{0};
};

class ConfigMap {
public:
    static ConfigMap parse(std::string_view text);

    bool contains(const std::string& key) const { return entries_.count(key) != 0; }
    void set(const std::string& key, std::string text);
    // Later entries win; used to overlay a config file onto a preset.
    void merge(const ConfigMap& overrides);

    // Typed getters mark the key as consumed and throw config_error (naming
    // the key) on malformed values.
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    // Numeric list: comma-separated scalars and/or start:step:stop ranges.
    std::vector<double> get_double_list(const std::string& key,
                                        std::vector<double> fallback) const;
    // Raw tokens of a comma-separated list (for `inf` handling).
    std::vector<std::string> get_token_list(const std::string& key) const;

    // First key never touched by a getter, if any; rejects typos.
    std::optional<std::string> first_unconsumed() const;

    const std::map<std::string, ConfigValue>& entries() const { return entries_; }

private:
    std::map<std::string, ConfigValue> entries_;
    mutable std::set<std::string> consumed_;
};

// Expand one numeric list value (scalars and ranges).
std::vector<double> expand_numeric_list(const ConfigValue& value, const std::string& key);

}  // namespace spinbath::sweep
