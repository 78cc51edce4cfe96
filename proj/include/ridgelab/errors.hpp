#pragma once

#include <stdexcept>
#include <string>

namespace ridgelab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define RIDGELAB_DEFINE_ERROR(Name)        \
    class Name : public Error {            \
    public:                                \
        using Error::Error;                \
    }

// Field arithmetic / shapes
RIDGELAB_DEFINE_ERROR(InvalidModulus);
RIDGELAB_DEFINE_ERROR(InvalidInverse);
RIDGELAB_DEFINE_ERROR(DimensionError);

// Activation / ridgelet functions
RIDGELAB_DEFINE_ERROR(DegenerateActivation);
RIDGELAB_DEFINE_ERROR(NotAdmissible);

// Simulator
RIDGELAB_DEFINE_ERROR(TooLargeForDense);
RIDGELAB_DEFINE_ERROR(NotIsometric);
RIDGELAB_DEFINE_ERROR(StateNotNormalized);

// Learning pipeline
RIDGELAB_DEFINE_ERROR(NoData);
RIDGELAB_DEFINE_ERROR(InconsistentLabels);
RIDGELAB_DEFINE_ERROR(InvalidHyperparameter);
RIDGELAB_DEFINE_ERROR(UnsupportedPath);
RIDGELAB_DEFINE_ERROR(DegenerateDistribution);
RIDGELAB_DEFINE_ERROR(NoNodes);

// Harness
RIDGELAB_DEFINE_ERROR(IoError);

#undef RIDGELAB_DEFINE_ERROR

/// Configuration problem; carries the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error("config '" + key + "': " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace ridgelab
