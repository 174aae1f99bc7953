#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace coldgate {

/// Parses a number; also accepts multiples of pi such as "pi", "-pi/2", "3pi/2", "1.5*pi".
double parse_number(const std::string& text);

/// Flat key/value scenario configuration. Values are read through typed accessors that
/// record the resolved value (defaults included) for the config echo.
class Config {
public:
    Config() = default;
    /// key=value lines with '#' comments, or a JSON object when the text starts with '{'.
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    void set(const std::string& key, const std::string& value) { raw_[key] = value; }
    bool has(const std::string& key) const { return raw_.count(key) > 0; }

    double number(const std::string& key, double fallback);
    int integer(const std::string& key, int fallback);
    std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback);
    bool flag(const std::string& key, bool fallback);
    std::string text(const std::string& key, const std::string& fallback);
    std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);

    /// Throws ValidationError naming every key that no accessor asked for.
    void reject_unknown() const;
    /// Resolved values as sorted key=value lines.
    std::string echo() const;

private:
    std::map<std::string, std::string> raw_;
    std::map<std::string, std::string> resolved_;
    std::set<std::string> used_;
};

}  // namespace coldgate
