#include "ecotrip/obd.hpp"

#include <array>
#include <cctype>
#include <cmath>

namespace ecotrip::obd {

namespace {

constexpr std::uint8_t kMode01Response = 0x41;

struct PidInfo {
    Channel channel;
    std::uint8_t pid;
    int data_len;
    const char* name;
    const char* unit;
    ChannelRange range;
};

// Standard mode-01 scalings; ranges are the full span of the raw encoding.
constexpr std::array<PidInfo, kChannelCount> kPids = {{
    {Channel::Speed, 0x0D, 1, "speed", "km/h", {0.0, 255.0}},
    {Channel::Rpm, 0x0C, 2, "rpm", "rev/min", {0.0, 16383.75}},
    {Channel::Maf, 0x10, 2, "maf", "g/s", {0.0, 655.35}},
    {Channel::Map, 0x0B, 1, "map", "kPa", {0.0, 255.0}},
    {Channel::Iat, 0x0F, 1, "iat", "degC", {-40.0, 215.0}},
    {Channel::AbsLoad, 0x43, 2, "abs_load", "%", {0.0, 25700.0}},
    {Channel::FuelRate, 0x5E, 2, "fuel_rate", "l/h", {0.0, 3276.75}},
}};

const PidInfo& info(Channel c) {
    return kPids[static_cast<int>(c)];
}

const PidInfo* info_by_pid(std::uint8_t pid) {
    for (const auto& p : kPids) {
        if (p.pid == pid) return &p;
    }
    return nullptr;
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

const char* unit_of(Channel c) { return info(c).unit; }
const char* name_of(Channel c) { return info(c).name; }
ChannelRange range_of(Channel c) { return info(c).range; }
std::uint8_t pid_of(Channel c) { return info(c).pid; }
int data_len_of(Channel c) { return info(c).data_len; }

std::optional<Channel> channel_of_pid(std::uint8_t pid) {
    const PidInfo* p = info_by_pid(pid);
    if (!p) return std::nullopt;
    return p->channel;
}

std::optional<PidFrame> try_parse_frame(std::span<const std::uint8_t> raw,
                                        FrameError& err) noexcept {
    if (raw.size() < 2) {
        err = FrameError::Truncated;
        return std::nullopt;
    }
    if (raw[0] != kMode01Response) {
        err = FrameError::WrongMode;
        return std::nullopt;
    }
    const PidInfo* p = info_by_pid(raw[1]);
    if (!p) {
        err = FrameError::UnknownPid;
        return std::nullopt;
    }
    if (static_cast<int>(raw.size()) - 2 != p->data_len) {
        err = FrameError::LengthMismatch;
        return std::nullopt;
    }
    PidFrame frame;
    frame.raw.assign(raw.begin(), raw.end());
    frame.mode_echo = raw[0];
    frame.pid = raw[1];
    frame.data.assign(raw.begin() + 2, raw.end());
    err = FrameError::None;
    return frame;
}

PidFrame parse_frame(std::span<const std::uint8_t> raw) {
    FrameError err = FrameError::None;
    auto frame = try_parse_frame(raw, err);
    if (frame) return std::move(*frame);
    switch (err) {
    case FrameError::Truncated:
        throw TruncatedFrame("frame shorter than mode+pid (" +
                             std::to_string(raw.size()) + " bytes)");
    case FrameError::WrongMode:
        throw WrongMode("expected mode echo 0x41, got byte 0x" +
                        to_hex({raw.data(), 1}));
    case FrameError::UnknownPid:
        throw UnknownPid("unsupported pid 0x" + to_hex({raw.data() + 1, 1}));
    case FrameError::LengthMismatch: {
        const PidInfo* p = info_by_pid(raw[1]);
        throw LengthMismatch("pid 0x" + to_hex({raw.data() + 1, 1}) + " needs " +
                             std::to_string(p->data_len) + " data bytes, got " +
                             std::to_string(raw.size() - 2));
    }
    case FrameError::None:
        break;
    }
    throw Error("unreachable frame error");
}

ChannelReading decode(const PidFrame& frame) {
    const PidInfo* p = info_by_pid(frame.pid);
    if (!p || static_cast<int>(frame.data.size()) != p->data_len) {
        throw UnknownPid("frame does not carry a known pid payload");
    }
    const double a = static_cast<double>(frame.data[0]);
    const double ab =
        p->data_len == 2 ? 256.0 * a + static_cast<double>(frame.data[1]) : 0.0;

    double value = 0.0;
    switch (p->channel) {
    case Channel::Speed: value = a; break;
    case Channel::Rpm: value = ab / 4.0; break;
    case Channel::Maf: value = ab / 100.0; break;
    case Channel::Map: value = a; break;
    case Channel::Iat: value = a - 40.0; break;
    case Channel::AbsLoad: value = ab * 100.0 / 255.0; break;
    case Channel::FuelRate: value = ab / 20.0; break;
    }
    return ChannelReading{p->channel, value};
}

std::vector<std::uint8_t> encode_frame(Channel c, double value) {
    const PidInfo& p = info(c);
    if (!(value >= p.range.lo && value <= p.range.hi)) {
        throw Error(std::string(p.name) + " value out of range: " +
                    std::to_string(value));
    }
    double counts = 0.0;
    switch (c) {
    case Channel::Speed: counts = value; break;
    case Channel::Rpm: counts = value * 4.0; break;
    case Channel::Maf: counts = value * 100.0; break;
    case Channel::Map: counts = value; break;
    case Channel::Iat: counts = value + 40.0; break;
    case Channel::AbsLoad: counts = value * 255.0 / 100.0; break;
    case Channel::FuelRate: counts = value * 20.0; break;
    }
    const long n = std::lround(counts);
    std::vector<std::uint8_t> out;
    out.push_back(kMode01Response);
    out.push_back(p.pid);
    if (p.data_len == 2) {
        out.push_back(static_cast<std::uint8_t>((n >> 8) & 0xFF));
        out.push_back(static_cast<std::uint8_t>(n & 0xFF));
    } else {
        out.push_back(static_cast<std::uint8_t>(n & 0xFF));
    }
    return out;
}

std::vector<std::uint8_t> parse_hex(std::string_view text) {
    std::vector<std::uint8_t> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[j]))) {
            ++j;
        }
        std::string_view tok = text.substr(i, j - i);
        if (tok.size() % 2 != 0) {
            throw ParseError("odd-length hex token '" + std::string(tok) + "'");
        }
        for (std::size_t k = 0; k < tok.size(); k += 2) {
            const int hi = hex_digit(tok[k]);
            const int lo = hex_digit(tok[k + 1]);
            if (hi < 0 || lo < 0) {
                throw ParseError("invalid hex token '" + std::string(tok) + "'");
            }
            out.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
        }
        i = j;
    }
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static const char* digits = "0123456789ABCDEF";
    std::string s;
    s.reserve(bytes.size() * 3);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if (i > 0) s.push_back(' ');
        s.push_back(digits[bytes[i] >> 4]);
        s.push_back(digits[bytes[i] & 0x0F]);
    }
    return s;
}

} // namespace ecotrip::obd
