#include "mfcat/parse.hpp"

#include <cctype>

namespace mfcat {

namespace {

class Parser {
public:
    Parser(const std::string& s, RingPtr ring) : s_(s), ring_(std::move(ring)) {}

    Poly run() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_ + 1); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Poly expr() {
        Poly acc = eat('-') ? -term() : (eat('+'), term());
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    Poly term() {
        Poly acc = factor();
        while (eat('*')) acc *= factor();
        return acc;
    }

    Poly factor() {
        Poly base = primary();
        if (eat('^')) {
            long e = integer();
            if (e < 0) fail("negative exponent");
            Poly r = Poly::constant(ring_, Scalar(1));
            for (long k = 0; k < e; ++k) r *= base;
            return r;
        }
        return base;
    }

    long integer() {
        skip_ws();
        size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            { pos_ = start; fail("expected integer"); }
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > (1L << 40)) fail("integer literal too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    Poly primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (c == '-') { ++pos_; return -primary(); }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = integer();
            if (eat('/')) {
                long den = integer();
                if (den == 0) fail("zero denominator");
                return Poly::constant(ring_, Scalar::of_fraction(num, den));
            }
            return Poly::constant(ring_, Scalar(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            std::string name = ident();
            if (name == "i") return Poly::constant(ring_, Scalar::i());
            auto idx = ring_->index_of(name);
            if (!idx) { pos_ = start; fail("unknown variable '" + name + "'"); }
            return Poly::var(ring_, *idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string ident() {
        std::string name;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
                name += c;
                ++pos_;
            } else break;
        }
        return name;
    }

    const std::string& s_;
    RingPtr ring_;
    size_t pos_ = 0;
};

} // namespace

Poly parse_poly(const std::string& text, const RingPtr& ring) {
    return Parser(text, ring).run();
}

} // namespace mfcat
