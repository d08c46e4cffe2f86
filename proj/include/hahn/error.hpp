#pragma once

#include <stdexcept>
#include <string>

namespace hahn {

enum class ErrorKind {
    DomainMismatch,
    InvalidArgument,
    DivisionByZero,
    NeedsPrecision,
    NotInValuationRing,
    InvalidOperator,
    SizeLimit,
    Unsupported,
    NotQuasiLinear,
    LinearSurjectivityFailure,
    NoRootInResidue,
    NotConstant,
    IterationLimit,
    Parse,
    Config,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace hahn
