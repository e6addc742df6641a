#include "wv/parse.hpp"

#include <cctype>
#include <cstdlib>

namespace wv {

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    const NameSet& names;

    explicit Parser(std::string_view t, const NameSet& n) : text(t), names(n) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }

    Expr parse_expr() {
        Expr e = parse_term();
        for (;;) {
            if (accept('+'))
                e = e + parse_term();
            else if (accept('-'))
                e = e - parse_term();
            else
                return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            if (accept('*'))
                e = e * parse_factor();
            else if (accept('/'))
                e = e / parse_factor();
            else
                return e;
        }
    }

    Expr parse_factor() {
        if (accept('-')) return -parse_factor();
        Expr base = parse_atom();
        if (accept('^')) {
            auto [num, den] = parse_exponent();
            return binary(BinaryOp::Pow, base, rational(num, den));
        }
        return base;
    }

    std::pair<long long, long long> parse_exponent() {
        skip_ws();
        if (accept('(')) {
            bool negative = accept('-');
            long long num = parse_integer();
            long long den = 1;
            if (accept('/')) den = parse_integer();
            expect(')');
            return {negative ? -num : num, den};
        }
        bool negative = accept('-');
        long long num = parse_integer();
        return {negative ? -num : num, 1};
    }

    long long parse_integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer", pos);
        return std::strtoll(std::string(text.substr(start, pos - start)).c_str(), nullptr, 10);
    }

    Expr parse_atom() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Expr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    Expr parse_number() {
        std::size_t start = pos;
        bool has_dot = false, has_exp = false;
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ++pos;
            } else if (c == '.' && !has_dot && !has_exp) {
                has_dot = true;
                ++pos;
            } else if ((c == 'e' || c == 'E') && !has_exp && pos > start) {
                has_exp = true;
                ++pos;
                if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
            } else {
                break;
            }
        }
        std::string tok(text.substr(start, pos - start));
        if (!has_dot && !has_exp) return rational(std::strtoll(tok.c_str(), nullptr, 10));
        return real_const(std::strtod(tok.c_str(), nullptr));
    }

    Expr parse_name() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name(text.substr(start, pos - start));
        if (peek() == '(') {
            UnaryOp op;
            if (name == "sin") op = UnaryOp::Sin;
            else if (name == "cos") op = UnaryOp::Cos;
            else if (name == "tan") op = UnaryOp::Tan;
            else if (name == "cot") op = UnaryOp::Cot;
            else if (name == "ln") op = UnaryOp::Ln;
            else if (name == "exp") op = UnaryOp::Exp;
            else if (name == "sqrt") op = UnaryOp::Sqrt;
            else if (name == "arccos") op = UnaryOp::Arccos;
            else if (name == "abs") op = UnaryOp::Abs;
            else throw ParseError("unknown function '" + name + "'", start);
            expect('(');
            Expr arg = parse_expr();
            expect(')');
            return unary(op, arg);
        }
        if (names.variables.count(name)) return var(name);
        if (names.parameters.count(name)) return param(name);
        throw ParseError("unknown name '" + name + "'", start);
    }
};

} // namespace

Expr parse(std::string_view text, const NameSet& names) {
    Parser p(text, names);
    Expr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return e;
}

} // namespace wv
