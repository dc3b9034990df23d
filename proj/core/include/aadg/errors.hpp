#pragma once

#include <stdexcept>
#include <string>

namespace aadg {

// Root of the project failure taxonomy. Precondition violations (bad
// arguments, out-of-range config values caught before any work happens)
// throw std::invalid_argument instead and are never retried.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define AADG_DEFINE_ERROR(Name)                  \
    class Name : public Error {                  \
    public:                                      \
        using Error::Error;                      \
    }

// Adapter boundary
AADG_DEFINE_ERROR(TransportError);    // network/timeout; the only retryable class
AADG_DEFINE_ERROR(BackendRefusal);    // non-success status or unusable payload
AADG_DEFINE_ERROR(EmptyCompletion);   // backend returned blank text
AADG_DEFINE_ERROR(DurationMismatch);  // synthesized length off by > 5%
AADG_DEFINE_ERROR(DimensionMismatch);

// Verification math
AADG_DEFINE_ERROR(ZeroNormVector);

// Generation loops
AADG_DEFINE_ERROR(GenerationExhausted);
AADG_DEFINE_ERROR(ExtractionSchemaError);
AADG_DEFINE_ERROR(JudgeUnparseable);

// Audio engine
AADG_DEFINE_ERROR(MalformedWav);
AADG_DEFINE_ERROR(UnsupportedEncoding);
AADG_DEFINE_ERROR(SampleRateMismatch);
AADG_DEFINE_ERROR(ArityMismatch);

// Dataset / pipeline
AADG_DEFINE_ERROR(IoFailure);
AADG_DEFINE_ERROR(DuplicateRecordId);
AADG_DEFINE_ERROR(ConfigError);
AADG_DEFINE_ERROR(FatalBackendError);

#undef AADG_DEFINE_ERROR

} // namespace aadg
