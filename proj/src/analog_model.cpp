#include "meshmodel/analog_model.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace meshmodel {

namespace {

// C(16, k) for k = 0..16.
constexpr std::array<double, 17> kChoose16 = {
    1,    16,   120,  560,   1820,  4368, 8008, 11440, 12870,
    11440, 8008, 4368, 1820, 560,   120,  16,   1};

}  // namespace

void RadioParams::validate() const {
    if (!std::isfinite(tx_power_dbm))
        throw std::invalid_argument("tx_power_dbm: must be finite");
    if (!std::isfinite(noise_power_dbm))
        throw std::invalid_argument("noise_power_dbm: must be finite");
    if (!std::isfinite(disturb_threshold_dbm))
        throw std::invalid_argument("disturb_threshold_dbm: must be finite");
}

double received_power_dbm(const RadioParams& r, double distance_m) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("distance_m: must be > 0");
    const double loss = distance_m > 8.0
                            ? 58.5 + 33.0 * std::log10(distance_m / 8.0)
                            : 40.2 + 20.0 * std::log10(distance_m);
    return r.tx_power_dbm - loss;
}

double snr_linear(double rx_power_dbm, double noise_power_dbm) {
    return std::pow(10.0, (rx_power_dbm - noise_power_dbm) / 10.0);
}

double bit_error_rate(double snr_linear) {
    if (snr_linear < 0.0)
        throw std::invalid_argument("snr_linear: must be >= 0");
    double sum = 0.0;
    for (int k = 2; k <= 16; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * kChoose16[static_cast<std::size_t>(k)] *
               std::exp(20.0 * snr_linear * (1.0 / k - 1.0));
    }
    const double ber = (8.0 / 15.0) * (1.0 / 16.0) * sum;
    return std::clamp(ber, 0.0, 1.0);
}

double packet_error_rate(double ber, int bytes) {
    if (ber < 0.0 || ber > 1.0)
        throw std::invalid_argument("ber: must be in [0, 1]");
    if (bytes < 0)
        throw std::invalid_argument("bytes: must be >= 0");
    return 1.0 - std::pow(1.0 - ber, 8.0 * bytes);
}

bool in_range(const RadioParams& r, double distance_m) {
    return received_power_dbm(r, distance_m) > r.disturb_threshold_dbm;
}

}  // namespace meshmodel
