#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "meshmodel/chain_oracle.hpp"
#include "meshmodel/csma_chain.hpp"

using namespace meshmodel;

namespace {

ChainInputs make_inputs(double alpha, double p_noack, double p_send, int min_be = 3,
                        int max_be = 5, int m = 4, int n = 3) {
    ChainInputs in;
    in.alpha = alpha;
    in.p_noack = p_noack;
    in.p_send = p_send;
    in.params.mac_min_be = min_be;
    in.params.mac_max_be = max_be;
    in.params.mac_max_csma_backoffs = m;
    in.params.mac_max_frame_retries = n;
    in.timing = derive_timing(in.params, TrafficParams{}, 2);
    return in;
}

double closed_form_mass(const ChainInputs& in) {
    const int m = in.params.mac_max_csma_backoffs;
    const int n = in.params.mac_max_frame_retries;
    double mass = closed_form(in).idle;
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= m; ++i)
            for (int k = 0; k < backoff_window(in.params, i); ++k)
                mass += stationary_probability(in, i, k, j);
        mass += in.timing.success_units * sending_state_probability(in, j);
        mass += in.timing.fail_units * colliding_state_probability(in, j);
    }
    return mass;
}

}  // namespace

TEST_CASE("partial geometric sums") {
    CHECK(geometric_sum(1.0, 5) == 5.0);
    CHECK(geometric_sum(0.5, 3) == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(geometric_sum(0.0, 4) == 1.0);
    CHECK(geometric_sum(0.3, 0) == 0.0);
    CHECK(geometric_sum(2.0, 3) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(geometric_sum(1.0 - 1e-10, 7) == 7.0);  // limit branch
    CHECK_THROWS_AS(geometric_sum(0.5, -1), std::invalid_argument);
}

TEST_CASE("closed form with a free channel and no collisions") {
    // 1/b000 collapses to (W0+1)/2 + L_s + 1/p_send and tau equals b000.
    for (int m : {0, 1, 4}) {
        for (int n : {0, 3}) {
            for (double ps : {0.01, 0.3, 0.99}) {
                const ChainInputs in = make_inputs(0.0, 0.0, ps, 3, 5, m, n);
                const ChainOutputs out = closed_form(in);
                CHECK(out.y == 0.0);
                const double w0 = 8.0;
                const double expected = 1.0 / ((w0 + 1.0) / 2.0 + in.timing.success_units + 1.0 / ps);
                CHECK(out.b000 == doctest::Approx(expected).epsilon(1e-12));
                CHECK(out.tau == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("closed form with a channel that is never free") {
    const ChainInputs in = make_inputs(1.0, 0.5, 0.4);
    const ChainOutputs out = closed_form(in);
    CHECK(out.y == 0.0);  // no transmission ever starts, so no retries
    CHECK(out.tau == doctest::Approx(out.b000 * 5.0).epsilon(1e-12));

    ChainInputs rounded = in;
    rounded.timing = rounded_dwell_times(in.timing);
    const ChainOracle oracle(rounded);
    const ChainOutputs closed = closed_form(rounded);
    CHECK(closed.tau == doctest::Approx(oracle.tau()).epsilon(1e-9));
    CHECK(closed.idle == doctest::Approx(oracle.idle()).epsilon(1e-9));
}

TEST_CASE("closed form matches the stationary solve on a loaded grid point") {
    ChainInputs in = make_inputs(0.3, 0.2, 0.05);
    in.timing = rounded_dwell_times(in.timing);
    const ChainOracle oracle(in);
    const ChainOutputs closed = closed_form(in);
    CHECK(std::abs(closed.tau - oracle.tau()) <= 1e-9);
    CHECK(std::abs(closed.b000 - oracle.b000()) <= 1e-9);
    CHECK(std::abs(closed.idle - oracle.idle()) <= 1e-9);
    CHECK(oracle.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("backoff state probabilities") {
    const ChainInputs in = make_inputs(0.3, 0.2, 0.05);
    const ChainOutputs out = closed_form(in);
    CHECK(stationary_probability(in, 0, 0, 0) == doctest::Approx(out.b000).epsilon(1e-15));
    const int w2 = backoff_window(in.params, 2);
    CHECK(stationary_probability(in, 2, w2 - 1, 1) ==
          doctest::Approx(out.b000 * out.y * in.alpha * in.alpha / w2).epsilon(1e-12));

    const ChainInputs no_retry = make_inputs(0.3, 0.0, 0.05);
    CHECK(stationary_probability(no_retry, 0, 0, 2) == 0.0);  // y = 0 kills j > 0

    CHECK_THROWS_AS(stationary_probability(in, 5, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(stationary_probability(in, 0, 8, 0), std::invalid_argument);
    CHECK_THROWS_AS(stationary_probability(in, 0, 0, 4), std::invalid_argument);
}

TEST_CASE("a link with nothing to send stays idle") {
    const ChainInputs in = make_inputs(0.3, 0.2, 0.0);
    const ChainOutputs out = closed_form(in);
    CHECK(out.tau == 0.0);
    CHECK(out.idle == 1.0);
}

TEST_CASE("closed-form distribution is normalized with real dwell times") {
    for (double alpha : {0.0, 0.3, 0.9}) {
        for (double pn : {0.0, 0.5}) {
            for (double ps : {0.01, 0.7}) {
                const ChainInputs in = make_inputs(alpha, pn, ps);
                CHECK(closed_form_mass(in) == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("sensing probability shrinks as the channel gets busier") {
    double previous = 1.0;
    for (double alpha : {0.0, 0.2, 0.4, 0.6, 0.8}) {
        const ChainOutputs out = closed_form(make_inputs(alpha, 0.2, 0.3));
        CHECK(out.tau < previous);
        CHECK(out.tau <= (4 + 1) * (3 + 1) * out.b000 + 1e-15);
        previous = out.tau;
    }
}

TEST_CASE("invalid chain inputs are rejected") {
    CHECK_THROWS_AS(closed_form(make_inputs(-0.1, 0.0, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(closed_form(make_inputs(0.0, 1.1, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(closed_form(make_inputs(0.0, 0.0, 2.0)), std::invalid_argument);
}

TEST_CASE("oracle self-consistency") {
    ChainInputs in = make_inputs(0.5, 0.25, 0.4, 2, 7, 4, 3);
    in.timing = rounded_dwell_times(in.timing);
    const ChainOracle oracle(in);
    CHECK(oracle.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(oracle.b000() == oracle.backoff_pi(0, 0, 0));
    // Success dwell states of one attempt all carry the same mass.
    for (int h = 1; h < oracle.success_steps(); ++h)
        CHECK(oracle.sending_pi(h, 0) == doctest::Approx(oracle.sending_pi(0, 0)).epsilon(1e-9));
}
