#include "meshmodel/csma_chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace meshmodel {

double geometric_sum(double x, int terms) {
    if (terms < 0) throw std::invalid_argument("geometric_sum: negative term count");
    if (std::abs(1.0 - x) <= 1e-9) return static_cast<double>(terms);
    return (1.0 - std::pow(x, terms)) / (1.0 - x);
}

namespace {

void check_probability(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0))
        throw std::invalid_argument(std::string(name) + ": must be in [0, 1]");
}

}  // namespace

ChainOutputs closed_form(const ChainInputs& in) {
    check_probability(in.alpha, "alpha");
    check_probability(in.p_noack, "p_noack");
    check_probability(in.p_send, "p_send");
    in.params.validate();

    ChainOutputs out;
    if (in.p_send <= 0.0) {
        out.idle = 1.0;
        return out;
    }

    const int m = in.params.mac_max_csma_backoffs;
    const int n = in.params.mac_max_frame_retries;
    const int m_bar = in.params.mac_max_be - in.params.mac_min_be;
    const double w0 = static_cast<double>(1 << in.params.mac_min_be);
    const double alpha = in.alpha;
    const double alpha_m1 = std::pow(alpha, m + 1);
    const double y = in.p_noack * (1.0 - alpha_m1);
    const double geo_y = geometric_sum(y, n + 1);

    // Backoff occupancy: sum over stages of alpha^i (W_i + 1) / 2, split at
    // the stage where the window saturates.
    const int uncapped = std::min(m, m_bar);
    const double backoff =
        0.5 * geo_y *
        (w0 * geometric_sum(2.0 * alpha, uncapped + 1) + geometric_sum(alpha, uncapped + 1) +
         (static_cast<double>(1 << in.params.mac_max_be) + 1.0) * std::pow(alpha, m_bar + 1) *
             geometric_sum(alpha, std::max(0, m - m_bar)));

    // Channel occupancy during transmissions.
    const double transmit = (1.0 - alpha_m1) *
                            (in.timing.success_units * (1.0 - in.p_noack) +
                             in.timing.fail_units * in.p_noack) *
                            geo_y;

    // Idle returns: drops after m+1 busy channels, successes, and the final
    // drop after n+1 collided attempts.
    const double idle_term =
        (std::pow(y, n + 1) + geo_y * (alpha_m1 + (1.0 - in.p_noack) * (1.0 - alpha_m1))) /
        in.p_send;

    out.y = y;
    out.b000 = 1.0 / (backoff + transmit + idle_term);
    out.tau = out.b000 * geometric_sum(alpha, m + 1) * geo_y;
    out.idle = out.b000 * idle_term;
    return out;
}

double stationary_probability(const ChainInputs& in, int i, int k, int j) {
    const int m = in.params.mac_max_csma_backoffs;
    const int n = in.params.mac_max_frame_retries;
    if (i < 0 || i > m)
        throw std::invalid_argument("backoff stage i=" + std::to_string(i) + " out of range");
    if (j < 0 || j > n)
        throw std::invalid_argument("retry index j=" + std::to_string(j) + " out of range");
    const int wi = backoff_window(in.params, i);
    if (k < 0 || k >= wi)
        throw std::invalid_argument("countdown k=" + std::to_string(k) + " out of range");
    const ChainOutputs out = closed_form(in);
    return out.b000 * std::pow(out.y, j) * std::pow(in.alpha, i) *
           (static_cast<double>(wi) - k) / wi;
}

double sending_state_probability(const ChainInputs& in, int j) {
    const ChainOutputs out = closed_form(in);
    const double alpha_m1 = std::pow(in.alpha, in.params.mac_max_csma_backoffs + 1);
    return (1.0 - in.p_noack) * (1.0 - alpha_m1) * out.b000 * std::pow(out.y, j);
}

double colliding_state_probability(const ChainInputs& in, int j) {
    const ChainOutputs out = closed_form(in);
    return std::pow(out.y, j + 1) * out.b000;
}

}  // namespace meshmodel
