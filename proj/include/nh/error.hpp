#ifndef NH_ERROR_HPP
#define NH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nh {

// Base for all library errors. Specific conditions get their own type so
// callers (and the CLI exit-code mapping) can dispatch on them.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct NotHermitian : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct NotScalarD : Error {
    double spread = 0.0;  // eigenvalue spread of D, for diagnostics
    NotScalarD(const std::string& msg, double s) : Error(msg), spread(s) {}
};
struct ZeroOperator : Error {
    using Error::Error;
};
struct NotTraceless : Error {
    using Error::Error;
};
struct WrongDimension : Error {
    using Error::Error;
};
struct NotInGammaSpan : Error {
    using Error::Error;
};
struct SpectrumOutOfBounds : Error {
    using Error::Error;
};
struct UnpairedLevel : Error {
    using Error::Error;
};
struct ExceptionalPointError : Error {
    using Error::Error;
};
struct DiagonalLeak : Error {
    using Error::Error;
};
struct CoalescedPair : Error {
    using Error::Error;
};
struct CrossLevelLeak : Error {
    using Error::Error;
};
struct DefectiveBA : Error {
    using Error::Error;
};
struct GapClosed : Error {
    using Error::Error;
};
struct MismatchBeyondTolerance : Error {
    using Error::Error;
};
struct UnknownModel : Error {
    using Error::Error;
};
struct MissingParam : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace nh

#endif
