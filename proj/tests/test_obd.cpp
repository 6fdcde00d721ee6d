#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "ecotrip/errors.hpp"
#include "ecotrip/obd.hpp"

using namespace ecotrip;
using namespace ecotrip::obd;

namespace {
std::vector<std::uint8_t> bytes(std::initializer_list<int> xs) {
    std::vector<std::uint8_t> out;
    for (int x : xs) out.push_back(static_cast<std::uint8_t>(x));
    return out;
}
} // namespace

TEST_CASE("parse_frame splits a valid speed frame") {
    const auto f = parse_frame(bytes({0x41, 0x0D, 0x3C}));
    CHECK(f.mode_echo == 0x41);
    CHECK(f.pid == 0x0D);
    REQUIRE(f.data.size() == 1);
    CHECK(f.data[0] == 0x3C);
}

TEST_CASE("parse_frame error taxonomy") {
    CHECK_THROWS_AS(parse_frame(bytes({})), TruncatedFrame);
    CHECK_THROWS_AS(parse_frame(bytes({0x41})), TruncatedFrame);
    CHECK_THROWS_AS(parse_frame(bytes({0x7F, 0x01, 0x12})), WrongMode);
    CHECK_THROWS_AS(parse_frame(bytes({0x41, 0x99, 0x00})), UnknownPid);
    // PID 0x0C needs 2 data bytes
    CHECK_THROWS_AS(parse_frame(bytes({0x41, 0x0C, 0x1A})), LengthMismatch);
    CHECK_THROWS_AS(parse_frame(bytes({0x41, 0x0D, 0x3C, 0x00})), LengthMismatch);
}

TEST_CASE("try_parse_frame reports the same taxonomy without throwing") {
    FrameError err = FrameError::None;
    CHECK(!try_parse_frame(bytes({}), err));
    CHECK(err == FrameError::Truncated);
    CHECK(!try_parse_frame(bytes({0x00, 0x0D, 0x3C}), err));
    CHECK(err == FrameError::WrongMode);
    CHECK(!try_parse_frame(bytes({0x41, 0xFF}), err));
    CHECK(err == FrameError::UnknownPid);
    CHECK(!try_parse_frame(bytes({0x41, 0x10, 0x01}), err));
    CHECK(err == FrameError::LengthMismatch);
    CHECK(try_parse_frame(bytes({0x41, 0x10, 0x01, 0x02}), err).has_value());
    CHECK(err == FrameError::None);
}

TEST_CASE("decode applies the standard scalings") {
    // oracle: hand evaluation of the scaling formulas
    auto value = [](std::initializer_list<int> raw) {
        return decode(parse_frame(bytes(raw))).value;
    };
    CHECK(value({0x41, 0x0D, 0x3C}) == 60.0);
    CHECK(value({0x41, 0x0C, 0x1A, 0xF8}) == 1726.0);
    CHECK(value({0x41, 0x10, 0x03, 0xE8}) == 10.0);
    CHECK(value({0x41, 0x0F, 0x00}) == -40.0);
    CHECK(value({0x41, 0x0B, 0x65}) == 101.0);
    CHECK(value({0x41, 0x43, 0x00, 0xFF}) == doctest::Approx(100.0));
    CHECK(value({0x41, 0x5E, 0x00, 0x78}) == 6.0);
}

TEST_CASE("decode is total and in-range over every possible payload") {
    const Channel channels[] = {Channel::Speed,   Channel::Rpm, Channel::Maf,
                                Channel::Map,     Channel::Iat, Channel::AbsLoad,
                                Channel::FuelRate};
    for (Channel c : channels) {
        const ChannelRange range = range_of(c);
        const int len = data_len_of(c);
        const int hi_max = len == 2 ? 255 : 0;
        for (int a = 0; a <= hi_max; ++a) {
            for (int b = 0; b <= 255; ++b) {
                PidFrame f;
                f.pid = pid_of(c);
                if (len == 2) {
                    f.data = {static_cast<std::uint8_t>(a),
                              static_cast<std::uint8_t>(b)};
                } else {
                    f.data = {static_cast<std::uint8_t>(b)};
                }
                const ChannelReading r = decode(f);
                REQUIRE(r.channel == c);
                REQUIRE(r.value >= range.lo);
                REQUIRE(r.value <= range.hi);
            }
        }
    }
}

TEST_CASE("encode -> parse -> decode round-trips every representable value") {
    const Channel channels[] = {Channel::Speed,   Channel::Rpm, Channel::Maf,
                                Channel::Map,     Channel::Iat, Channel::AbsLoad,
                                Channel::FuelRate};
    for (Channel c : channels) {
        const int len = data_len_of(c);
        const int hi_max = len == 2 ? 255 : 0;
        for (int a = 0; a <= hi_max; ++a) {
            for (int b = 0; b <= 255; ++b) {
                PidFrame f;
                f.pid = pid_of(c);
                if (len == 2) {
                    f.data = {static_cast<std::uint8_t>(a),
                              static_cast<std::uint8_t>(b)};
                } else {
                    f.data = {static_cast<std::uint8_t>(b)};
                }
                const double v = decode(f).value;
                const auto encoded = encode_frame(c, v);
                const double back = decode(parse_frame(encoded)).value;
                REQUIRE(back == v);
            }
        }
    }
}

TEST_CASE("encode_frame rejects out-of-range values") {
    CHECK_THROWS_AS(encode_frame(Channel::Speed, -1.0), Error);
    CHECK_THROWS_AS(encode_frame(Channel::Speed, 256.0), Error);
    CHECK_THROWS_AS(encode_frame(Channel::Iat, -41.0), Error);
    CHECK_THROWS_AS(encode_frame(Channel::Rpm, 20000.0), Error);
}

TEST_CASE("hex text helpers") {
    CHECK(parse_hex("41 0D 3C") == bytes({0x41, 0x0D, 0x3C}));
    CHECK(parse_hex("  41\t0d 3c\n") == bytes({0x41, 0x0D, 0x3C}));
    CHECK(parse_hex("410D3C") == bytes({0x41, 0x0D, 0x3C}));
    CHECK(parse_hex("") == bytes({}));
    CHECK_THROWS_AS(parse_hex("41 0"), ParseError);
    CHECK_THROWS_AS(parse_hex("4G"), ParseError);
    CHECK(to_hex(bytes({0x41, 0x0D, 0x3C})) == "41 0D 3C");
    CHECK(parse_hex(to_hex(bytes({0x00, 0xFF, 0x7A}))) == bytes({0x00, 0xFF, 0x7A}));
}
