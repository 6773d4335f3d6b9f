#pragma once

#include <cctype>
#include <functional>
#include <stdexcept>
#include <string>

#include "gk/ordvalues.hpp"

namespace gk {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
struct ExprOps {
    std::function<T(const Z&)> number;
    std::function<T(const std::string&)> name;
    std::function<T(const T&, const T&)> add, sub, mul, div;
    std::function<T(const T&)> neg;
    std::function<T(const T&, long)> pow;
};

template <class T>
class ExprParser {
public:
    ExprParser(const std::string& s, const ExprOps<T>& ops) : s_(s), ops_(ops) {}

    T parse() {
        T r = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at column " + std::to_string(i_ + 1) + " in '" + s_ + "'");
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool starts_factor() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '_';
    }
    T expr() {
        T r = term();
        for (;;) {
            if (peek('+')) {
                ++i_;
                r = ops_.add(r, term());
            } else if (peek('-')) {
                ++i_;
                r = ops_.sub(r, term());
            } else
                return r;
        }
    }
    T term() {
        T r = unary();
        for (;;) {
            if (peek('*')) {
                ++i_;
                r = ops_.mul(r, unary());
            } else if (peek('/')) {
                ++i_;
                r = ops_.div(r, unary());
            } else if (starts_factor()) {
                r = ops_.mul(r, power());
            } else
                return r;
        }
    }
    T unary() {
        if (peek('-')) {
            ++i_;
            return ops_.neg(unary());
        }
        if (peek('+')) {
            ++i_;
            return unary();
        }
        return power();
    }
    T power() {
        T b = atom();
        if (peek('^')) {
            ++i_;
            skip();
            bool neg = false;
            if (i_ < s_.size() && s_[i_] == '-') {
                neg = true;
                ++i_;
            }
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (st == i_) fail("expected exponent");
            long e = std::stol(s_.substr(st, i_ - st));
            return ops_.pow(b, neg ? -e : e);
        }
        return b;
    }
    T atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            T r = expr();
            if (!peek(')')) fail("expected ')'");
            ++i_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return ops_.number(Z(s_.substr(st, i_ - st)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t st = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string nm = s_.substr(st, i_ - st);
            try {
                return ops_.name(nm);
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception& e) {
                i_ = st;
                fail(std::string("unknown name '") + nm + "'");
            }
        }
        fail("unexpected character");
    }

    const std::string& s_;
    const ExprOps<T>& ops_;
    std::size_t i_ = 0;
};

template <class T>
T parse_expr(const std::string& s, const ExprOps<T>& ops) {
    return ExprParser<T>(s, ops).parse();
}

}  // namespace gk
