#pragma once

#include <stdexcept>
#include <string>

namespace kaczmarz {

enum class ErrorKind {
    invalid_argument,      // shape, field or index problems
    not_hermitian,
    not_positive,
    singular,
    non_periodic,
    hypothesis_violation,
    grammian_not_positive,
    span_deficiency,
    not_almost_effective,
    oracle_disagreement,
    numerical_failure,     // an internal identity check failed
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace kaczmarz
