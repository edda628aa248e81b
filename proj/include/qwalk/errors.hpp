#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonUnitaryError : Error {
    using Error::Error;
};

struct ParameterOutOfRangeError : Error {
    using Error::Error;
};

struct InvalidDensityError : Error {
    using Error::Error;
};

struct UnsupportedTopologyError : Error {
    using Error::Error;
};

struct NonPureCoinError : Error {
    using Error::Error;
};

struct IncompleteKrausError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct NonTerminatingSeriesError : Error {
    using Error::Error;
};

struct InvalidSeriesParameterError : Error {
    using Error::Error;
};

struct SingularCoinError : Error {
    using Error::Error;
};

struct MeanOutOfRangeError : Error {
    using Error::Error;
};

struct ThetaZeroError : Error {
    using Error::Error;
};

}  // namespace qwalk
