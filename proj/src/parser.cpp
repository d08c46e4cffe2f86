#include "hahn/parser.hpp"

#include <cctype>
#include <map>

namespace hahn {

namespace {

std::string format_parse_error(const std::string& message, SourcePos pos, const std::vector<std::string>& expected) {
    std::string s = "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + message;
    if (!expected.empty()) {
        s += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i)
            s += (i ? ", " : "") + expected[i];
        s += ")";
    }
    return s;
}

}  // namespace

ParseError::ParseError(ErrorKind kind, const std::string& message, SourcePos pos, std::vector<std::string> expected)
    : Error(kind, format_parse_error(message, pos, expected)), message_(message), pos_(pos),
      expected_(std::move(expected)) {}

namespace {

const std::vector<std::string> kPrimary = {"integer", "'x'", "'t'", "'Y'", "'O('", "'('"};

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    ExprPtr parse_all() {
        ExprPtr e = expr();
        skip_ws();
        if (!eof())
            error("unexpected '" + std::string(1, peek()) + "'", {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        return e;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
    SourcePos at_;

    bool eof() const { return i_ >= s_.size(); }
    char peek() const { return eof() ? '\0' : s_[i_]; }

    void advance() {
        if (s_[i_] == '\n') {
            ++at_.line;
            at_.column = 1;
        } else {
            ++at_.column;
        }
        ++i_;
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek())))
            advance();
    }

    [[noreturn]] void error(const std::string& msg, std::vector<std::string> expected) const {
        throw ParseError(ErrorKind::Parse, msg, at_, std::move(expected));
    }

    std::string found() const { return eof() ? "end of input" : "'" + std::string(1, peek()) + "'"; }

    void expect(char c) {
        skip_ws();
        if (peek() != c)
            error("unexpected " + found(), {"'" + std::string(1, c) + "'"});
        advance();
    }

    ExprPtr binary(Expr::Kind kind, ExprPtr l, ExprPtr r, SourcePos pos) {
        Expr e{kind};
        e.lhs = std::move(l);
        e.rhs = std::move(r);
        e.pos = pos;
        return make(std::move(e));
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            skip_ws();
            SourcePos pos = at_;
            if (peek() == '+') {
                advance();
                e = binary(Expr::Kind::Add, e, term(), pos);
            } else if (peek() == '-') {
                advance();
                e = binary(Expr::Kind::Sub, e, term(), pos);
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = unary();
        while (true) {
            skip_ws();
            SourcePos pos = at_;
            if (peek() == '*') {
                advance();
                e = binary(Expr::Kind::Mul, e, unary(), pos);
            } else if (peek() == '/') {
                advance();
                e = binary(Expr::Kind::Div, e, unary(), pos);
            } else {
                return e;
            }
        }
    }

    ExprPtr unary() {
        skip_ws();
        if (peek() == '-') {
            SourcePos pos = at_;
            advance();
            Expr e{Expr::Kind::Neg};
            e.lhs = unary();
            e.pos = pos;
            return make(std::move(e));
        }
        return power();
    }

    long integer_exponent() {
        skip_ws();
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            advance();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            error("unexpected " + found(), negative ? std::vector<std::string>{"integer"}
                                                    : std::vector<std::string>{"integer", "'-'"});
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            digits += peek();
            advance();
        }
        if (digits.size() > 9)
            error("exponent too large", {});
        long v = std::stol(digits);
        return negative ? -v : v;
    }

    ExprPtr power() {
        ExprPtr base = primary();
        skip_ws();
        if (peek() != '^')
            return base;
        SourcePos pos = at_;
        advance();
        Expr e{Expr::Kind::Pow};
        e.lhs = base;
        e.power = integer_exponent();
        e.pos = pos;
        return make(std::move(e));
    }

    // Exponent of t: integer, -integer or a parenthesized group literal.
    std::string group_exponent() {
        skip_ws();
        std::string text;
        if (peek() == '(') {
            advance();
            int depth = 1;
            while (!eof()) {
                char c = peek();
                if (c == '(')
                    ++depth;
                if (c == ')' && --depth == 0)
                    break;
                if (!std::isspace(static_cast<unsigned char>(c)))
                    text += c;
                advance();
            }
            if (eof())
                error("unterminated exponent", {"')'"});
            if (text.empty())
                error("empty exponent", {"group literal"});
            advance();
            return text;
        }
        if (peek() == '-') {
            text += '-';
            advance();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            error("unexpected " + found(), text.empty() ? std::vector<std::string>{"integer", "'-'", "'('"}
                                                        : std::vector<std::string>{"integer"});
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            text += peek();
            advance();
        }
        return text;
    }

    ExprPtr primary() {
        skip_ws();
        SourcePos pos = at_;
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                digits += peek();
                advance();
            }
            Expr e{Expr::Kind::Number};
            e.number = Integer(digits);
            e.pos = pos;
            return make(std::move(e));
        }
        if (c == '(') {
            advance();
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                word += peek();
                advance();
            }
            if (word == "x") {
                Expr e{Expr::Kind::X};
                e.pos = pos;
                return make(std::move(e));
            }
            if (word == "t") {
                Expr e{Expr::Kind::TPower};
                e.exponent = "1";
                e.pos = pos;
                skip_ws();
                if (peek() == '^') {
                    advance();
                    e.exponent = group_exponent();
                }
                return make(std::move(e));
            }
            if (word == "Y") {
                Expr e{Expr::Kind::Y};
                e.pos = pos;
                while (peek() == '\'') {
                    ++e.order;
                    advance();
                }
                return make(std::move(e));
            }
            if (word == "O") {
                Expr e{Expr::Kind::BigO};
                e.pos = pos;
                expect('(');
                skip_ws();
                if (peek() != 't')
                    error("unexpected " + found(), {"'t'"});
                advance();
                skip_ws();
                e.exponent = "1";
                if (peek() == '^') {
                    advance();
                    e.exponent = group_exponent();
                }
                expect(')');
                return make(std::move(e));
            }
            at_ = pos;
            throw ParseError(ErrorKind::Parse, "unknown name '" + word + "'", pos, kPrimary);
        }
        error("unexpected " + found(), kPrimary);
    }
};

int precedence(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
    }
}

bool plain_integer(const std::string& s) {
    std::size_t k = s[0] == '-' ? 1 : 0;
    if (k == s.size())
        return false;
    for (; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            return false;
    return true;
}

std::string exponent_text(const std::string& s) { return plain_integer(s) ? s : "(" + s + ")"; }

std::string wrap(const Expr& e, bool parens) {
    std::string s = print_expression(e);
    return parens ? "(" + s + ")" : s;
}

GroupElement exponent_value(const ValueGroup& g, const Expr& e) {
    std::string text = e.exponent;
    if (text.find(',') != std::string::npos)
        text = "(" + text + ")";
    try {
        return GroupElement::parse(g, text);
    } catch (const Error& err) {
        throw ParseError(ErrorKind::Parse, "bad exponent '" + e.exponent + "' for " + g.to_string() + ": " + err.what(),
                         e.pos);
    }
}

[[noreturn]] void not_allowed(const Expr& e, const std::string& what, const std::string& where) {
    throw ParseError(ErrorKind::Parse, what + " is not allowed in " + where, e.pos);
}

DifferentialPolynomial eval_dp(const FieldSpec& spec, const Expr& e, bool allow_y);

HahnSeries as_series(const FieldSpec& spec, const Expr& e) {
    DifferentialPolynomial p = eval_dp(spec, e, false);
    auto it = p.terms().find(MultiIndex{});
    return it == p.terms().end() ? HahnSeries(spec.group) : it->second;
}

DifferentialPolynomial eval_dp(const FieldSpec& spec, const Expr& e, bool allow_y) {
    const ValueGroup& g = spec.group;
    auto constant = [&](const HahnSeries& s) { return DifferentialPolynomial::constant(s); };
    switch (e.kind) {
    case Expr::Kind::Number: return constant(HahnSeries::constant(g, RatFunc(Rational(e.number))));
    case Expr::Kind::X:
        if (spec.field == CoeffField::Rationals)
            not_allowed(e, "x", "coefficients over Q");
        return constant(HahnSeries::constant(g, RatFunc::x()));
    case Expr::Kind::TPower: return constant(HahnSeries::monomial(g, 1, exponent_value(g, e)));
    case Expr::Kind::BigO: return constant(HahnSeries::big_o(g, exponent_value(g, e)));
    case Expr::Kind::Y:
        if (!allow_y)
            not_allowed(e, "Y", "a series");
        return DifferentialPolynomial::variable(g, e.order);
    case Expr::Kind::Add: return eval_dp(spec, *e.lhs, allow_y) + eval_dp(spec, *e.rhs, allow_y);
    case Expr::Kind::Sub: return eval_dp(spec, *e.lhs, allow_y) - eval_dp(spec, *e.rhs, allow_y);
    case Expr::Kind::Mul: return eval_dp(spec, *e.lhs, allow_y) * eval_dp(spec, *e.rhs, allow_y);
    case Expr::Kind::Neg: return -eval_dp(spec, *e.lhs, allow_y);
    case Expr::Kind::Div: {
        if (contains_y(*e.rhs))
            not_allowed(*e.rhs, "Y", "a divisor");
        HahnSeries d = as_series(spec, *e.rhs);
        return eval_dp(spec, *e.lhs, allow_y) * constant(inverse(d, spec.truncation));
    }
    case Expr::Kind::Pow: {
        if (e.power < 0) {
            if (contains_y(*e.lhs))
                not_allowed(*e.lhs, "Y", "a negative power");
            HahnSeries b = inverse(as_series(spec, *e.lhs), spec.truncation);
            return constant(power(b, static_cast<unsigned long>(-e.power)));
        }
        DifferentialPolynomial base = eval_dp(spec, *e.lhs, allow_y);
        DifferentialPolynomial r = constant(HahnSeries::constant(g, 1));
        for (long k = 0; k < e.power; ++k)
            r = r * base;
        return r;
    }
    }
    throw std::logic_error("unhandled expression kind");
}

}  // namespace

bool same_tree(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.number != b.number || a.exponent != b.exponent || a.order != b.order ||
        a.power != b.power)
        return false;
    if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs))
        return false;
    return (!a.lhs || same_tree(*a.lhs, *b.lhs)) && (!a.rhs || same_tree(*a.rhs, *b.rhs));
}

bool contains_y(const Expr& e) {
    if (e.kind == Expr::Kind::Y)
        return true;
    return (e.lhs && contains_y(*e.lhs)) || (e.rhs && contains_y(*e.rhs));
}

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse_all(); }

std::string print_expression(const Expr& e) {
    const int p = precedence(e);
    switch (e.kind) {
    case Expr::Kind::Number: return e.number.get_str();
    case Expr::Kind::X: return "x";
    case Expr::Kind::TPower: return e.exponent == "1" ? "t" : "t^" + exponent_text(e.exponent);
    case Expr::Kind::BigO: return "O(t^" + exponent_text(e.exponent) + ")";
    case Expr::Kind::Y: return "Y" + std::string(e.order, '\'');
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
        const char* op = e.kind == Expr::Kind::Add ? " + "
                         : e.kind == Expr::Kind::Sub ? " - "
                         : e.kind == Expr::Kind::Mul ? "*"
                                                     : "/";
        return wrap(*e.lhs, precedence(*e.lhs) < p) + op + wrap(*e.rhs, precedence(*e.rhs) <= p);
    }
    case Expr::Kind::Neg: return "-" + wrap(*e.lhs, precedence(*e.lhs) < p);
    case Expr::Kind::Pow: {
        // t^a^n would reread the first exponent as part of t
        bool parens = precedence(*e.lhs) < 5 || e.lhs->kind == Expr::Kind::TPower;
        return wrap(*e.lhs, parens) + "^" + std::to_string(e.power);
    }
    }
    return "";
}

RatFunc eval_coeff(CoeffField field, const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Number: return RatFunc(Rational(e.number));
    case Expr::Kind::X:
        if (field == CoeffField::Rationals)
            not_allowed(e, "x", "an element of Q");
        return RatFunc::x();
    case Expr::Kind::TPower:
    case Expr::Kind::BigO: not_allowed(e, "t", "a coefficient");
    case Expr::Kind::Y: not_allowed(e, "Y", "a coefficient");
    case Expr::Kind::Add: return eval_coeff(field, *e.lhs) + eval_coeff(field, *e.rhs);
    case Expr::Kind::Sub: return eval_coeff(field, *e.lhs) - eval_coeff(field, *e.rhs);
    case Expr::Kind::Mul: return eval_coeff(field, *e.lhs) * eval_coeff(field, *e.rhs);
    case Expr::Kind::Neg: return -eval_coeff(field, *e.lhs);
    case Expr::Kind::Div: {
        RatFunc d = eval_coeff(field, *e.rhs);
        if (d.is_zero())
            throw ParseError(ErrorKind::Parse, "division by zero", e.rhs->pos);
        return eval_coeff(field, *e.lhs) / d;
    }
    case Expr::Kind::Pow: {
        RatFunc b = eval_coeff(field, *e.lhs);
        if (b.is_zero() && e.power < 0)
            throw ParseError(ErrorKind::Parse, "negative power of zero", e.pos);
        return pow(b, e.power);
    }
    }
    throw std::logic_error("unhandled expression kind");
}

HahnSeries eval_series(const FieldSpec& spec, const Expr& e) { return as_series(spec, e); }

DifferentialPolynomial eval_differential(const FieldSpec& spec, const Expr& e) { return eval_dp(spec, e, true); }

RatFunc parse_coeff(CoeffField field, std::string_view text) { return eval_coeff(field, *parse_expression(text)); }

HahnSeries parse_series(const FieldSpec& spec, std::string_view text) {
    return eval_series(spec, *parse_expression(text));
}

DifferentialPolynomial parse_differential(const FieldSpec& spec, std::string_view text) {
    return eval_differential(spec, *parse_expression(text));
}

namespace {

std::pair<std::size_t, std::size_t> trim_range(std::string_view s, std::size_t b, std::size_t e) {
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return {b, e};
}

[[noreturn]] void config_error(const std::string& msg, std::size_t offset, std::vector<std::string> expected = {}) {
    throw ParseError(ErrorKind::Config, msg, SourcePos{1, static_cast<int>(offset) + 1}, std::move(expected));
}

}  // namespace

AdditiveMap parse_cmap(const ValueGroup& group, CoeffField field, std::string_view text) {
    auto [b, e] = trim_range(text, 0, text.size());
    if (text.substr(b, 2) == "c:")
        std::tie(b, e) = trim_range(text, b + 2, e);
    if (text.substr(b, e - b) == "0")
        return AdditiveMap::zero(group, field);
    const std::size_t n = group.kind() == GroupKind::LexTuples ? group.rank() : 1;
    std::vector<RatFunc> images(n);
    std::vector<bool> seen(n, false);
    std::size_t pos = b;
    if (pos == e)
        config_error("empty c-map", pos, {"'0'", "generator"});
    while (pos < e) {
        std::size_t arrow = text.find("->", pos);
        if (arrow == std::string_view::npos || arrow >= e)
            config_error("missing '->'", e, {"'->'"});
        auto [lb, le] = trim_range(text, pos, arrow);
        if (lb == le)
            config_error("missing generator before '->'", lb, {"generator"});
        std::size_t stop = arrow + 2;
        int depth = 0;
        while (stop < e && !(depth == 0 && text[stop] == ',')) {
            if (text[stop] == '(')
                ++depth;
            if (text[stop] == ')')
                --depth;
            ++stop;
        }
        auto [rb, re] = trim_range(text, arrow + 2, stop);
        std::string lhs(text.substr(lb, le - lb));
        std::size_t slot = 0;
        Rational scale = 1;
        if (group.kind() == GroupKind::LexTuples) {
            bool ok = lhs.size() >= 2 && lhs[0] == 'e';
            for (std::size_t k = 1; ok && k < lhs.size(); ++k)
                ok = std::isdigit(static_cast<unsigned char>(lhs[k])) != 0;
            long idx = ok && lhs.size() < 8 ? std::stol(lhs.substr(1)) : 0;
            if (!ok || idx < 1 || static_cast<std::size_t>(idx) > n)
                config_error("generator '" + lhs + "' is not e1..e" + std::to_string(n), lb, {"e1..e" + std::to_string(n)});
            slot = static_cast<std::size_t>(idx - 1);
        } else {
            GroupElement g(group);
            try {
                g = GroupElement::parse(group, lhs);
            } catch (const Error& err) {
                config_error("bad group element '" + lhs + "' for " + group.to_string(), lb, {"group element"});
            }
            if (g.is_zero())
                config_error("c-map entries need a nonzero group element", lb, {"nonzero group element"});
            Rational gen = group.kind() == GroupKind::FracIntegers ? Rational(1, group.denominator()) : Rational(1);
            gen.canonicalize();
            scale = gen / g.value();
        }
        if (seen[slot])
            config_error("duplicate entry for '" + lhs + "'", lb);
        seen[slot] = true;
        if (rb == re)
            config_error("missing image after '->'", rb, {"coefficient"});
        try {
            images[slot] = parse_coeff(field, text.substr(rb, re - rb)) * RatFunc(scale);
        } catch (const ParseError& err) {
            config_error(err.message(), rb + err.pos().column - 1, err.expected());
        }
        pos = stop < e ? stop + 1 : e;
        if (stop < e && trim_range(text, pos, e).first == e)
            config_error("trailing ','", stop, {"generator"});
    }
    return AdditiveMap(group, field, images);
}

}  // namespace hahn
