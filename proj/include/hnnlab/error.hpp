#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hnnlab {

enum class ErrorKind {
    MismatchedField,
    DivisionByZero,
    SingularMatrix,
    NotUnimodular,
    NotInImage,
    NotFullRank,
    NotHyperbolic,
    UnsupportedField,
    NotDehnPresentation,
    CapExceeded,
    NotInSubgroup,
    OracleDisagreement,
    UnknownLetter,
    OutOfWindow,
    Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hnnlab
