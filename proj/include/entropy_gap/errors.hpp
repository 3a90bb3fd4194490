#pragma once

#include <stdexcept>
#include <string>

namespace entropy_gap {

/// Base class for every error raised by the library. `kind()` is a stable
/// identifier used in serialized reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ENTROPY_GAP_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    }

ENTROPY_GAP_ERROR(NotHermitian);
ENTROPY_GAP_ERROR(NotPSD);
ENTROPY_GAP_ERROR(ConvergenceFailure);
ENTROPY_GAP_ERROR(DimensionMismatch);
ENTROPY_GAP_ERROR(InvalidState);
ENTROPY_GAP_ERROR(InvalidAlpha);
ENTROPY_GAP_ERROR(SupportDeficient);
ENTROPY_GAP_ERROR(InfeasibleShape);
ENTROPY_GAP_ERROR(InvalidDistribution);
ENTROPY_GAP_ERROR(InvalidConfig);
ENTROPY_GAP_ERROR(IoError);
ENTROPY_GAP_ERROR(ParseError);

#undef ENTROPY_GAP_ERROR

}  // namespace entropy_gap
