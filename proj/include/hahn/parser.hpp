#pragma once

#include "hahn/cmap.hpp"
#include "hahn/dhensel.hpp"
#include "hahn/error.hpp"
#include "hahn/hahn_series.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hahn {

struct SourcePos {
    int line = 1;
    int column = 1;
};

// Parse or config error with a 1-based source position and the tokens that
// would have been accepted there.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, const std::string& message, SourcePos pos, std::vector<std::string> expected = {});

    const SourcePos& pos() const { return pos_; }
    const std::vector<std::string>& expected() const { return expected_; }
    const std::string& message() const { return message_; }

private:
    std::string message_;
    SourcePos pos_;
    std::vector<std::string> expected_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, X, TPower, BigO, Y, Add, Sub, Mul, Div, Neg, Pow };
    explicit Expr(Kind k) : kind(k) {}

    Kind kind;
    Integer number;        // Number
    std::string exponent;  // TPower, BigO: group literal without outer parentheses
    int order = 0;         // Y: number of primes
    long power = 0;        // Pow
    ExprPtr lhs, rhs;      // operands (Neg and Pow use lhs)
    SourcePos pos;
};

// Structural equality, ignoring positions.
bool same_tree(const Expr& a, const Expr& b);
bool contains_y(const Expr& e);

// expr := term (('+'|'-') term)*, term := unary (('*'|'/') unary)*,
// unary := '-' unary | power, power := primary ('^' integer)?,
// primary := integer | 'x' | 't' ['^' exp] | 'O(t^' exp ')' | 'Y' '\''* | '(' expr ')'
ExprPtr parse_expression(std::string_view text);
std::string print_expression(const Expr& e);

RatFunc eval_coeff(CoeffField field, const Expr& e);
HahnSeries eval_series(const FieldSpec& spec, const Expr& e);
DifferentialPolynomial eval_differential(const FieldSpec& spec, const Expr& e);

RatFunc parse_coeff(CoeffField field, std::string_view text);
HahnSeries parse_series(const FieldSpec& spec, std::string_view text);
DifferentialPolynomial parse_differential(const FieldSpec& spec, std::string_view text);

// "c: 1 -> x", "1/2 -> x", "e1 -> 1, e2 -> 1/x", "0"; the "c:" prefix is optional.
AdditiveMap parse_cmap(const ValueGroup& group, CoeffField field, std::string_view text);

}  // namespace hahn
