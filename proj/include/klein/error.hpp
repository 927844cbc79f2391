#ifndef KLEIN_ERROR_HPP
#define KLEIN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace klein {

enum class ErrorCode {
    SingularMatrix,
    ReduciblePolynomial,
    UnsupportedDimension,
    NotSquarefree,
    NotTotallyReal,
    DivisionByZero,
    RankDeficient,
    PerfectSquareD,
    RationalCone,
    NotHyperbolic,
    FirstCoordinateZero,
    OnBoundary,
    EmptyPatch,
    NotAUnit,
    NotASymmetry,
    NonGaloisObstruction,
    InsufficientDepth,
    StructureViolation,
    ConditionViolated,
    NotGalois,
    NoUnitFound,
    InvalidArgument,
    ParseError,
};

std::string_view error_name(ErrorCode code);

/* All library failures are reported through this one exception type; the
 * code tells callers (and the CLI exit-code mapping) what went wrong. */
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace klein

#endif
