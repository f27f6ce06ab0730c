#include "spinbath/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace spinbath::sweep {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

double parse_number(std::string_view token, const std::string& key) {
    const std::string text(trim(token));
    if (text.empty()) throw config_error("empty numeric value", key);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
        throw config_error("cannot parse '" + text + "' as a number", key);
    return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(trim(s.substr(start)));
            break;
        }
        out.emplace_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

}  // namespace

ConfigMap ConfigMap::parse(std::string_view text) {
    ConfigMap map;
    std::string section;
    int line_no = 0;
    std::size_t cursor = 0;
    while (cursor <= text.size()) {
        const std::size_t eol = text.find('\n', cursor);
        std::string_view line = text.substr(
            cursor, eol == std::string_view::npos ? text.size() - cursor : eol - cursor);
        ++line_no;
        cursor = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        const std::string_view stripped = trim(line);
        if (stripped.empty()) continue;

        if (stripped.front() == '[') {
            if (stripped.back() != ']')
                throw config_error("section header missing closing ']'", line_no,
                                   int(line.find('[')) + 1);
            const std::string_view name = trim(stripped.substr(1, stripped.size() - 2));
            if (!valid_identifier(name))
                throw config_error("invalid section name '" + std::string(name) + "'",
                                   line_no, int(line.find('[')) + 2);
            section = std::string(name);
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw config_error("expected 'key = value'", line_no, 1);
        const std::string_view key = trim(line.substr(0, eq));
        if (!valid_identifier(key))
            throw config_error("invalid key '" + std::string(key) + "'", line_no, 1);
        std::string_view value = trim(line.substr(eq + 1));
        if (value.empty())
            throw config_error("missing value for key '" + std::string(key) + "'",
                               line_no, int(eq) + 2);

        ConfigValue cv;
        cv.text = std::string(value);
        cv.line = line_no;
        cv.column = int(line.find(value.front(), eq) + 1);
        const std::string path =
            section.empty() ? std::string(key) : section + "." + std::string(key);
        map.entries_[path] = std::move(cv);
    }
    return map;
}

void ConfigMap::set(const std::string& key, std::string text) {
    entries_[key] = ConfigValue{std::move(text), 0, 0};
}

void ConfigMap::merge(const ConfigMap& overrides) {
    for (const auto& [key, value] : overrides.entries_) entries_[key] = value;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    return parse_number(it->second.text, key);
}

int ConfigMap::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, double(fallback));
    const double rounded = std::nearbyint(v);
    if (std::abs(v - rounded) > 1e-9 || std::abs(v) > 2e9)
        throw config_error("expected an integer, got '" + std::to_string(v) + "'", key);
    return int(rounded);
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::string v = it->second.text;
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw config_error("expected a boolean, got '" + it->second.text + "'", key);
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second.text;
}

std::vector<double> expand_numeric_list(const ConfigValue& value, const std::string& key) {
    std::vector<double> out;
    for (const std::string& token : split(value.text, ',')) {
        if (token.find(':') != std::string::npos) {
            const std::vector<std::string> parts = split(token, ':');
            if (parts.size() != 3)
                throw config_error("range must be start:step:stop, got '" + token + "'",
                                   key);
            const double start = parse_number(parts[0], key);
            const double step = parse_number(parts[1], key);
            const double stop = parse_number(parts[2], key);
            if (!(step > 0.0))
                throw config_error("range step must be > 0 in '" + token + "'", key);
            if (stop < start)
                throw config_error("range stop precedes start in '" + token + "'", key);
            const long count = std::lround(std::floor((stop - start) / step + 1e-9));
            if (count > 2'000'000)
                throw config_error("range '" + token + "' expands to too many points",
                                   key);
            for (long i = 0; i <= count; ++i) out.push_back(start + step * double(i));
        } else {
            out.push_back(parse_number(token, key));
        }
    }
    return out;
}

std::vector<double> ConfigMap::get_double_list(const std::string& key,
                                               std::vector<double> fallback) const {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    return expand_numeric_list(it->second, key);
}

std::vector<std::string> ConfigMap::get_token_list(const std::string& key) const {
    consumed_.insert(key);
    const auto it = entries_.find(key);
    if (it == entries_.end()) return {};
    return split(it->second.text, ',');
}

std::optional<std::string> ConfigMap::first_unconsumed() const {
    for (const auto& [key, value] : entries_)
        if (consumed_.count(key) == 0) return key;
    return std::nullopt;
}

}  // namespace spinbath::sweep
