#include "cellcheck/errors.hpp"
#include "cellcheck/io.hpp"

#include <charconv>

namespace cellcheck {

namespace {

std::string_view trim(std::string_view text) {
    auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

std::set<std::string> parse_list(std::string_view value, bool uppercase) {
    std::set<std::string> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        auto comma = value.find(',', pos);
        auto item = trim(value.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (!item.empty()) out.insert(uppercase ? to_upper(item) : std::string(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

bool parse_flag(std::string_view value, std::size_t line) {
    for (auto yes : {"true", "yes", "on", "1", "enabled"}) {
        if (iequals(value, yes)) return true;
    }
    for (auto no : {"false", "no", "off", "0", "disabled"}) {
        if (iequals(value, no)) return false;
    }
    throw FormatError("expected a boolean, got '" + std::string(value) + "'", line);
}

int parse_threshold(std::string_view value, std::size_t line) {
    int out = 0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || end != value.data() + value.size()) {
        throw FormatError("expected an integer, got '" + std::string(value) + "'", line);
    }
    if (out < 1) throw FormatError("thresholds must be at least 1", line);
    return out;
}

struct Setting {
    std::string key;
    std::string value;
    std::size_t line;
};

}  // namespace

RuleConfig parse_config(std::string_view text) {
    std::vector<Setting> settings;
    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto newline = text.find('\n', pos);
        auto line = trim(text.substr(pos, newline == std::string_view::npos ? std::string_view::npos : newline - pos));
        pos = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
        ++line_number;
        if (line.empty() || line.front() == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw FormatError("expected key = value", line_number);
        settings.push_back({std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_number});
    }

    // The preset is the base layer regardless of where it appears.
    RuleConfig config = RuleConfig::config1();
    bool named = false;
    for (const auto& s : settings) {
        if (s.key != "preset") continue;
        auto preset = RuleConfig::preset(s.value);
        if (!preset) throw FormatError("unknown preset '" + s.value + "'", s.line);
        config = *preset;
    }
    for (const auto& s : settings) {
        if (s.key == "preset") {
            continue;
        } else if (s.key == "name") {
            config.name = s.value;
            named = true;
        } else if (s.key == "constants_ignored_values") {
            config.constants_ignored_values = parse_list(s.value, false);
        } else if (s.key == "constants_ignored_functions") {
            config.constants_ignored_functions = parse_list(s.value, true);
        } else if (s.key == "complexity_max_operations") {
            config.complexity_max_operations = parse_threshold(s.value, s.line);
        } else if (s.key == "complexity_max_nesting") {
            config.complexity_max_nesting = parse_threshold(s.value, s.line);
        } else if (s.key == "direction_check_right_below") {
            config.direction_check_right_below = parse_flag(s.value, s.line);
        } else if (s.key == "direction_check_sheet_order") {
            config.direction_check_sheet_order = parse_flag(s.value, s.line);
        } else {
            throw FormatError("unknown setting '" + s.key + "'", s.line);
        }
    }
    if (!named) {
        if (config.same_settings(RuleConfig::config1())) {
            config.name = "config1";
        } else if (config.same_settings(RuleConfig::config2())) {
            config.name = "config2";
        } else {
            config.name = "custom";
        }
    }
    return config;
}

RuleConfig load_config(const std::filesystem::path& path) {
    try {
        return parse_config(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace cellcheck
