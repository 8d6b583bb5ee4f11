#pragma once

#include <stdexcept>
#include <string>

namespace tk {

enum class Err {
    MixedRings,
    DivisionByNonUnit,
    EmptyList,
    NotSemiLocal,
    FactorizationFailure,
    UnsupportedResidueField,
    BadElement,
    ContextMismatch,
    UnknownVariable,
    DomainIncompatible,
    ZeroPolynomial,
    WrongCharacteristic,
    DegreeGuardExceeded,
    NonFieldCoefficients,
    NotHomogeneous,
    MixedExtensions,
    NonUnitInverse,
    UnsupportedQuotient,
    InadmissibleAfterReduction,
    InadmissibleInput,
    InadmissibleChartFunction,
    UnsupportedTarget,
    InhomogeneousForms,
    NonFlatHyperplane,
    ChartEmpty,
    NonFieldBase,
    UnsupportedBase,
    UnsupportedCodimension,
    NonProperWithoutFlag,
    BadParameters,
    WrongFamily,
    EnumerationTooLarge,
    SyntaxError,
    UnknownIdentifier,
    ArityError,
    Unsupported,
};

const char* err_name(Err e);

struct Error : std::runtime_error {
    Err code;
    Error(Err c, const std::string& msg)
        : std::runtime_error(std::string(err_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& msg) { throw Error(c, msg); }

}  // namespace tk
