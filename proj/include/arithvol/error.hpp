#pragma once

#include <stdexcept>
#include <string>

namespace arithvol {

enum class ErrorKind {
    InvalidArgument,
    UnsupportedCombination,
    NegativeDegree,
    ModelMismatch,
    BudgetExhausted,
    ScopeExceeded,
    AmbiguousBoundary,
    NotPrime,
    NotRational,
    ZeroSection,
    RankDeficient,
    DimensionMismatch,
    NotAmpleInCatalog,
    QuadratureNotConverged,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace arithvol
