#pragma once

#include <stdexcept>
#include <string>

namespace ecotrip {

// Base for everything this library throws on bad input or bad state.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- frame decoding ---
struct TruncatedFrame : Error { using Error::Error; };
struct WrongMode : Error { using Error::Error; };
struct UnknownPid : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };

// --- trace ingestion / windowing ---
struct ParseError : Error { using Error::Error; };
struct MissingColumn : Error { using Error::Error; };
struct NonMonotoneTime : Error { using Error::Error; };
struct EmptyTrace : Error { using Error::Error; };
struct WindowTooShort : Error { using Error::Error; };

// --- fuel model ---
struct InvalidTemperature : Error { using Error::Error; };
struct NoUsableChannels : Error { using Error::Error; };

// --- features ---
struct WindowTooSmall : Error { using Error::Error; };

// --- mlp ---
struct BadTopology : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct EmptySet : Error { using Error::Error; };
struct Diverged : Error { using Error::Error; };
struct CorruptFile : Error { using Error::Error; };
struct VersionMismatch : Error { using Error::Error; };

// --- synthetic generator ---
struct BadSpec : Error { using Error::Error; };

// --- pipeline ---
struct LabelMismatch : Error { using Error::Error; };
struct BadWeights : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };

} // namespace ecotrip
