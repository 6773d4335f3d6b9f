#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gk {

// TOML subset: [section] / [a.b] headers, key = value, comments, basic strings,
// integers, booleans and (nested, multi-line) arrays.
struct ConfigValue {
    enum class Kind { String, Integer, Boolean, Array };
    Kind kind = Kind::String;
    std::string text;  // string contents, or the integer literal
    bool flag = false;
    std::vector<ConfigValue> items;
    int line = 0, column = 0;

    bool is_array() const { return kind == Kind::Array; }
    std::string where() const;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<input>");
    static Config load(const std::string& path);

    bool has_section(const std::string& s) const { return sections_.count(s) > 0; }
    bool has(const std::string& s, const std::string& key) const;
    const ConfigValue& get(const std::string& s, const std::string& key) const;

    // typed accessors; ConfigError names section.key and the position on mismatch
    std::string str(const std::string& s, const std::string& key) const;
    std::string str(const std::string& s, const std::string& key, const std::string& dflt) const;
    long long integer(const std::string& s, const std::string& key) const;
    long long integer(const std::string& s, const std::string& key, long long dflt) const;
    bool boolean(const std::string& s, const std::string& key, bool dflt) const;
    // a scalar given as "p/q" string or integer
    std::string scalar_text(const ConfigValue& v, const std::string& what) const;
    std::vector<std::string> strings(const std::string& s, const std::string& key) const;

    const std::map<std::string, ConfigValue>& section(const std::string& s) const;
    std::vector<std::string> section_names() const;
    const std::string& origin() const { return origin_; }
    [[noreturn]] void fail(const ConfigValue& v, const std::string& msg) const;

private:
    std::string origin_;
    std::map<std::string, std::map<std::string, ConfigValue>> sections_;
};

}  // namespace gk
