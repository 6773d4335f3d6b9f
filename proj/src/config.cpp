#include "gk/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace gk {

std::string ConfigValue::where() const { return "line " + std::to_string(line) + ", column " + std::to_string(column); }

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::string& origin) : s_(text), origin_(origin) {}

    std::map<std::string, std::map<std::string, ConfigValue>> run() {
        std::map<std::string, std::map<std::string, ConfigValue>> out;
        std::string section;
        out[section];
        for (;;) {
            skip_blank_lines();
            if (eof()) break;
            if (peek() == '[') {
                ++i_, ++col_;
                skip_ws();
                section = key();
                while (!eof() && peek() == '.') {
                    ++i_, ++col_;
                    section += "." + key();
                }
                skip_ws();
                expect(']');
                if (out.count(section) && !out[section].empty()) fail("duplicate section [" + section + "]");
                out[section];
            } else {
                int l = line_, c = col_;
                std::string k = key();
                skip_ws();
                expect('=');
                skip_ws();
                ConfigValue v = value();
                if (out[section].count(k)) fail_at(l, c, "duplicate key '" + k + "'");
                out[section][k] = std::move(v);
            }
            end_of_line();
        }
        return out;
    }

private:
    bool eof() const { return i_ >= s_.size(); }
    char peek() const { return s_[i_]; }
    void advance() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }
    [[noreturn]] void fail_at(int l, int c, const std::string& msg) const {
        throw ConfigError(origin_ + ":" + std::to_string(l) + ":" + std::to_string(c) + ": " + msg);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail_at(line_, col_, msg); }
    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) advance();
    }
    void skip_comment() {
        if (!eof() && peek() == '#')
            while (!eof() && peek() != '\n') advance();
    }
    void skip_blank_lines() {
        for (;;) {
            skip_ws();
            skip_comment();
            if (!eof() && (peek() == '\n' || peek() == '\r'))
                advance();
            else
                return;
        }
    }
    // whitespace, comments and newlines inside arrays
    void skip_all() {
        for (;;) {
            skip_ws();
            skip_comment();
            if (!eof() && (peek() == '\n' || peek() == '\r'))
                advance();
            else
                return;
        }
    }
    void end_of_line() {
        skip_ws();
        skip_comment();
        if (eof()) return;
        if (peek() == '\r') advance();
        if (eof()) return;
        if (peek() != '\n') fail("expected end of line");
        advance();
    }
    void expect(char c) {
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }
    std::string key() {
        if (!eof() && peek() == '"') return quoted();
        std::string k;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) {
            k += peek();
            advance();
        }
        if (k.empty()) fail("expected a key");
        return k;
    }
    std::string quoted() {
        expect('"');
        std::string out;
        for (;;) {
            if (eof() || peek() == '\n') fail("unterminated string");
            char c = peek();
            advance();
            if (c == '"') return out;
            if (c == '\\') {
                if (eof()) fail("unterminated string");
                char e = peek();
                advance();
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail(std::string("unknown escape \\") + e);
                }
            } else {
                out += c;
            }
        }
    }
    ConfigValue value() {
        ConfigValue v;
        v.line = line_;
        v.column = col_;
        if (eof()) fail("expected a value");
        char c = peek();
        if (c == '"') {
            v.kind = ConfigValue::Kind::String;
            v.text = quoted();
        } else if (c == '[') {
            v.kind = ConfigValue::Kind::Array;
            advance();
            for (;;) {
                skip_all();
                if (eof()) fail("unterminated array");
                if (peek() == ']') {
                    advance();
                    break;
                }
                v.items.push_back(value());
                skip_all();
                if (!eof() && peek() == ',') {
                    advance();
                    continue;
                }
                if (eof()) fail("unterminated array");
                expect(']');
                break;
            }
        } else if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
            v.kind = ConfigValue::Kind::Integer;
            if (c == '-' || c == '+') {
                if (c == '-') v.text += c;
                advance();
            }
            while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_')) {
                if (peek() != '_') v.text += peek();
                advance();
            }
            if (v.text.empty() || v.text == "-") fail("malformed integer");
            if (!eof() && (peek() == '.' || peek() == 'e' || peek() == 'E'))
                fail("floating-point literals are not accepted; write rationals as \"p/q\" strings");
        } else if (s_.compare(i_, 4, "true") == 0) {
            v.kind = ConfigValue::Kind::Boolean;
            v.flag = true;
            for (int k = 0; k < 4; ++k) advance();
        } else if (s_.compare(i_, 5, "false") == 0) {
            v.kind = ConfigValue::Kind::Boolean;
            for (int k = 0; k < 5; ++k) advance();
        } else {
            fail("unsupported value");
        }
        return v;
    }

    const std::string& s_;
    const std::string& origin_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
};

const char* kind_name(ConfigValue::Kind k) {
    switch (k) {
        case ConfigValue::Kind::String: return "string";
        case ConfigValue::Kind::Integer: return "integer";
        case ConfigValue::Kind::Boolean: return "boolean";
        case ConfigValue::Kind::Array: return "array";
    }
    return "?";
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
    Config c;
    c.origin_ = origin;
    c.sections_ = Parser(text, c.origin_).run();
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

void Config::fail(const ConfigValue& v, const std::string& msg) const {
    throw ConfigError(origin_ + ":" + std::to_string(v.line) + ":" + std::to_string(v.column) + ": " + msg);
}

bool Config::has(const std::string& s, const std::string& key) const {
    auto it = sections_.find(s);
    return it != sections_.end() && it->second.count(key) > 0;
}

const ConfigValue& Config::get(const std::string& s, const std::string& key) const {
    auto it = sections_.find(s);
    if (it == sections_.end()) throw ConfigError(origin_ + ": missing section [" + s + "]");
    auto jt = it->second.find(key);
    if (jt == it->second.end()) throw ConfigError(origin_ + ": missing key " + s + "." + key);
    return jt->second;
}

const std::map<std::string, ConfigValue>& Config::section(const std::string& s) const {
    auto it = sections_.find(s);
    if (it == sections_.end()) throw ConfigError(origin_ + ": missing section [" + s + "]");
    return it->second;
}

std::vector<std::string> Config::section_names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : sections_)
        if (!k.empty()) out.push_back(k);
    return out;
}

std::string Config::str(const std::string& s, const std::string& key) const {
    const auto& v = get(s, key);
    if (v.kind != ConfigValue::Kind::String)
        fail(v, s + "." + key + ": expected a string, got " + kind_name(v.kind));
    return v.text;
}

std::string Config::str(const std::string& s, const std::string& key, const std::string& dflt) const {
    return has(s, key) ? str(s, key) : dflt;
}

long long Config::integer(const std::string& s, const std::string& key) const {
    const auto& v = get(s, key);
    if (v.kind != ConfigValue::Kind::Integer)
        fail(v, s + "." + key + ": expected an integer, got " + kind_name(v.kind));
    try {
        return std::stoll(v.text);
    } catch (const std::exception&) {
        fail(v, s + "." + key + ": integer out of range");
    }
}

long long Config::integer(const std::string& s, const std::string& key, long long dflt) const {
    return has(s, key) ? integer(s, key) : dflt;
}

bool Config::boolean(const std::string& s, const std::string& key, bool dflt) const {
    if (!has(s, key)) return dflt;
    const auto& v = get(s, key);
    if (v.kind != ConfigValue::Kind::Boolean)
        fail(v, s + "." + key + ": expected a boolean, got " + kind_name(v.kind));
    return v.flag;
}

std::string Config::scalar_text(const ConfigValue& v, const std::string& what) const {
    if (v.kind == ConfigValue::Kind::String || v.kind == ConfigValue::Kind::Integer) return v.text;
    fail(v, what + ": expected a number or a \"p/q\" string, got " + kind_name(v.kind));
}

std::vector<std::string> Config::strings(const std::string& s, const std::string& key) const {
    const auto& v = get(s, key);
    if (!v.is_array()) fail(v, s + "." + key + ": expected an array");
    std::vector<std::string> out;
    for (const auto& it : v.items) out.push_back(scalar_text(it, s + "." + key));
    return out;
}

}  // namespace gk
