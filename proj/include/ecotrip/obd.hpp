#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecotrip/errors.hpp"

namespace ecotrip::obd {

// Engine channels we decode from mode-01 responses.
enum class Channel {
    Speed,    // PID 0x0D, km/h
    Rpm,      // PID 0x0C, rev/min
    Maf,      // PID 0x10, g/s
    Map,      // PID 0x0B, kPa
    Iat,      // PID 0x0F, degC
    AbsLoad,  // PID 0x43, %
    FuelRate, // PID 0x5E, l/h
};

inline constexpr int kChannelCount = 7;

struct ChannelRange {
    double lo;
    double hi;
};

struct ChannelReading {
    Channel channel;
    double value; // unit per channel, see unit_of()
};

// One validated mode-01 response: 0x41, PID, payload.
struct PidFrame {
    std::vector<std::uint8_t> raw;  // full frame as received
    std::uint8_t mode_echo = 0x41;
    std::uint8_t pid = 0;
    std::vector<std::uint8_t> data; // A, B, ... per PID
};

enum class FrameError {
    None,
    Truncated,
    WrongMode,
    UnknownPid,
    LengthMismatch,
};

const char* unit_of(Channel c);
const char* name_of(Channel c);
ChannelRange range_of(Channel c);
std::uint8_t pid_of(Channel c);
std::optional<Channel> channel_of_pid(std::uint8_t pid);
int data_len_of(Channel c);

// Non-throwing parser; on failure returns nullopt and sets err.
std::optional<PidFrame> try_parse_frame(std::span<const std::uint8_t> raw,
                                        FrameError& err) noexcept;

// Throwing wrapper: TruncatedFrame, WrongMode, UnknownPid, LengthMismatch.
PidFrame parse_frame(std::span<const std::uint8_t> raw);

// Applies the per-PID scaling. Total over valid frames.
ChannelReading decode(const PidFrame& frame);

// Inverse of decode at the PID's granularity; throws Error when the value
// is outside the channel range.
std::vector<std::uint8_t> encode_frame(Channel c, double value);

// "41 0D 3C" (whitespace-separated hex, case-insensitive) -> bytes.
// Throws ParseError on non-hex characters or odd-length tokens.
std::vector<std::uint8_t> parse_hex(std::string_view text);

std::string to_hex(std::span<const std::uint8_t> bytes);

} // namespace ecotrip::obd
