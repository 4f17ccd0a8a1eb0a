#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "meshmodel/analog_model.hpp"

using namespace meshmodel;

namespace {
const RadioParams kRadio{0.0, -95.0, -87.0};
}

TEST_CASE("received power on both branches of the breakpoint model") {
    CHECK(received_power_dbm(kRadio, 1.0) == doctest::Approx(-40.2).epsilon(1e-15));
    // 8 m sits on the near branch exactly as printed.
    CHECK(received_power_dbm(kRadio, 8.0) ==
          doctest::Approx(-58.261799739838872).epsilon(1e-15));
    CHECK(received_power_dbm(kRadio, 80.0) == doctest::Approx(-91.5).epsilon(1e-15));
    CHECK_THROWS_AS(received_power_dbm(kRadio, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(received_power_dbm(kRadio, -1.0), std::invalid_argument);
}

TEST_CASE("breakpoint discontinuity stays visible and bounded") {
    const double below = received_power_dbm(kRadio, 8.0);
    const double above = received_power_dbm(kRadio, std::nextafter(8.0, 9.0));
    const double jump = below - above;
    CHECK(jump == doctest::Approx(0.238200260161128).epsilon(1e-9));
    CHECK(jump <= 0.25);
}

TEST_CASE("received power decreases with distance within each branch") {
    double previous = received_power_dbm(kRadio, 0.5);
    for (double d = 0.6; d <= 8.0; d += 0.1) {
        const double p = received_power_dbm(kRadio, d);
        CHECK(p < previous);
        previous = p;
    }
    previous = received_power_dbm(kRadio, 8.1);
    for (double d = 8.2; d <= 100.0; d += 0.5) {
        const double p = received_power_dbm(kRadio, d);
        CHECK(p < previous);
        previous = p;
    }
}

TEST_CASE("bit error rate at pinned SNR points") {
    // 0.5 comes from the alternating binomial identity at zero SNR; the other
    // values were frozen from a 60-digit term-by-term summation.
    CHECK(bit_error_rate(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(bit_error_rate(0.25) == doctest::Approx(0.12326210525647488).epsilon(1e-13));
    CHECK(bit_error_rate(1.0) == doctest::Approx(1.6152668792294790e-4).epsilon(1e-12));
    CHECK(bit_error_rate(2.0) == doctest::Approx(8.2000598195154329e-9).epsilon(1e-11));
    CHECK(bit_error_rate(1e3) <= 1e-300);
    CHECK_THROWS_AS(bit_error_rate(-0.1), std::invalid_argument);
}

TEST_CASE("bit error rate is monotone non-increasing in SNR") {
    double previous = 1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double ber = bit_error_rate(i * 0.1);
        CHECK(ber >= 0.0);
        CHECK(ber <= previous + 1e-18);
        previous = ber;
    }
}

TEST_CASE("packet error rate") {
    CHECK(packet_error_rate(0.0, 127) == 0.0);
    CHECK(packet_error_rate(1.0, 1) == 1.0);
    CHECK(packet_error_rate(1e-4, 50) == doctest::Approx(0.039212482552748129).epsilon(1e-12));
    CHECK_THROWS_AS(packet_error_rate(-0.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(packet_error_rate(1.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(packet_error_rate(0.5, -1), std::invalid_argument);
}

TEST_CASE("packet error rate grows with ber and with length") {
    double previous = 0.0;
    for (double ber = 0.0; ber <= 1.0; ber += 0.05) {
        const double per = packet_error_rate(ber, 127);
        CHECK(per >= previous);
        previous = per;
    }
    previous = 0.0;
    for (int bytes = 0; bytes <= 512; bytes += 16) {
        const double per = packet_error_rate(1e-4, bytes);
        CHECK(per >= previous);
        previous = per;
    }
}

TEST_CASE("interference predicate against the threshold") {
    RadioParams r = kRadio;
    r.disturb_threshold_dbm = -40.0;
    CHECK_FALSE(in_range(r, 1.0));  // -40.2 is below the -40 threshold
    r.disturb_threshold_dbm = -41.0;
    CHECK(in_range(r, 1.0));
    CHECK_FALSE(in_range(r, 1e9));
}
