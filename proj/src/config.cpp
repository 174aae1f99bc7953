#include "coldgate/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "coldgate/errors.hpp"
#include "coldgate/numerics.hpp"

namespace coldgate {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool plain_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string join_numbers(const nlohmann::json& arr) {
    std::string s;
    for (const auto& v : arr) {
        if (!v.is_number()) throw ValidationError("config: JSON arrays may hold numbers only");
        if (!s.empty()) s += ',';
        s += num::format_double(v.get<double>());
    }
    return s;
}

}  // namespace

double parse_number(const std::string& raw) {
    const std::string t = trim(raw);
    double v = 0.0;
    if (plain_number(t, v)) return v;
    const auto p = t.find("pi");
    if (p != std::string::npos) {
        std::string coef = trim(t.substr(0, p));
        std::string rest = trim(t.substr(p + 2));
        if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
        double c = 1.0;
        if (coef == "-") c = -1.0;
        else if (coef == "+" || coef.empty()) c = 1.0;
        else if (!plain_number(coef, c)) throw ValidationError("cannot parse number '" + raw + "'");
        double d = 1.0;
        if (!rest.empty()) {
            if (rest[0] != '/' || !plain_number(trim(rest.substr(1)), d) || d == 0.0)
                throw ValidationError("cannot parse number '" + raw + "'");
        }
        return c * kPi / d;
    }
    throw ValidationError("cannot parse number '" + raw + "'");
}

Config Config::parse(const std::string& text) {
    Config c;
    const std::string t = trim(text);
    if (!t.empty() && t[0] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(t);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(std::string("config: invalid JSON: ") + e.what());
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            const auto& v = it.value();
            if (v.is_string()) c.raw_[it.key()] = v.get<std::string>();
            else if (v.is_boolean()) c.raw_[it.key()] = v.get<bool>() ? "true" : "false";
            else if (v.is_number_integer()) c.raw_[it.key()] = std::to_string(v.get<long long>());
            else if (v.is_number()) c.raw_[it.key()] = num::format_double(v.get<double>());
            else if (v.is_array()) c.raw_[it.key()] = join_numbers(v);
            else throw ValidationError("config: unsupported JSON value for key '" + it.key() + "'");
        }
        return c;
    }
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
        if (c.raw_.count(key)) throw ValidationError("config: duplicate key '" + key + "'");
        c.raw_[key] = trim(line.substr(eq + 1));
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

double Config::number(const std::string& key, double fallback) {
    used_.insert(key);
    double v = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) {
        try {
            v = parse_number(it->second);
        } catch (const ValidationError&) {
            throw ValidationError("config key '" + key + "': not a number: '" + it->second + "'");
        }
    }
    resolved_[key] = num::format_double(v);
    return v;
}

int Config::integer(const std::string& key, int fallback) {
    used_.insert(key);
    int v = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) {
        const std::string s = trim(it->second);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ValidationError("config key '" + key + "': not an integer: '" + s + "'");
    }
    resolved_[key] = std::to_string(v);
    return v;
}

std::uint64_t Config::unsigned_integer(const std::string& key, std::uint64_t fallback) {
    used_.insert(key);
    std::uint64_t v = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) {
        const std::string s = trim(it->second);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ValidationError("config key '" + key + "': not a non-negative integer: '" + s + "'");
    }
    resolved_[key] = std::to_string(v);
    return v;
}

bool Config::flag(const std::string& key, bool fallback) {
    used_.insert(key);
    bool v = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) {
        std::string s = trim(it->second);
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (s == "true" || s == "1" || s == "yes" || s == "on") v = true;
        else if (s == "false" || s == "0" || s == "no" || s == "off") v = false;
        else throw ValidationError("config key '" + key + "': not a boolean: '" + s + "'");
    }
    resolved_[key] = v ? "true" : "false";
    return v;
}

std::string Config::text(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    std::string v = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) v = it->second;
    resolved_[key] = v;
    return v;
}

std::vector<double> Config::numbers(const std::string& key, const std::vector<double>& fallback) {
    used_.insert(key);
    std::vector<double> v = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) {
        v.clear();
        std::istringstream in(it->second);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (trim(item).empty()) continue;
            try {
                v.push_back(parse_number(item));
            } catch (const ValidationError&) {
                throw ValidationError("config key '" + key + "': bad list element '" + trim(item) + "'");
            }
        }
    }
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + num::format_double(x);
    resolved_[key] = s;
    return v;
}

void Config::reject_unknown() const {
    std::string bad;
    for (const auto& [k, v] : raw_)
        if (!used_.count(k)) bad += (bad.empty() ? "" : ", ") + k;
    if (!bad.empty()) throw ValidationError("unknown config key(s): " + bad);
}

std::string Config::echo() const {
    std::string s;
    for (const auto& [k, v] : resolved_) s += k + "=" + v + "\n";
    return s;
}

}  // namespace coldgate
