#include "meshmodel/model_config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace meshmodel {

void ProtocolParams::validate() const {
    if (mac_min_be < 0 || mac_min_be > mac_max_be)
        throw std::invalid_argument(
            "mac_min_be: must satisfy 0 <= mac_min_be <= mac_max_be (got " +
            std::to_string(mac_min_be) + ", mac_max_be=" + std::to_string(mac_max_be) + ")");
    if (mac_max_csma_backoffs < 0)
        throw std::invalid_argument("mac_max_csma_backoffs: must be >= 0");
    if (mac_max_frame_retries < 0)
        throw std::invalid_argument("mac_max_frame_retries: must be >= 0");
    if (packet_bytes < ack_bytes)
        throw std::invalid_argument(
            "packet_bytes: a data frame is at least as long as an ACK (>= " +
            std::to_string(ack_bytes) + " bytes), got " + std::to_string(packet_bytes));
}

void TrafficParams::validate() const {
    if (upstream_enabled && !(interval_up_s > 0.0))
        throw std::invalid_argument("interval_up_s: must be > 0");
    if (downstream_enabled && !(interval_down_s > 0.0))
        throw std::invalid_argument("interval_down_s: must be > 0");
}

DerivedTiming derive_timing(const ProtocolParams& p, const TrafficParams& t,
                            int node_count) {
    p.validate();
    t.validate();
    if (node_count < 2)
        throw std::invalid_argument("node_count: need the gateway plus at least one client, got " +
                                    std::to_string(node_count));

    DerivedTiming d;
    d.unit_seconds = 20 * 16e-6;  // aUnitBackoffPeriod * symbol duration
    d.packet_units = p.packet_bytes / 10.0;
    d.ack_units = ProtocolParams::ack_bytes / 10.0;
    d.success_units = d.packet_units + d.ack_units +
                      (ProtocolParams::ifs_symbols + ProtocolParams::t_ack_symbols) / 20.0;
    d.fail_units = d.packet_units + ProtocolParams::ack_wait_symbols / 20.0;
    d.rate_up = t.upstream_enabled ? d.unit_seconds / t.interval_up_s : 0.0;
    d.rate_down =
        t.downstream_enabled ? (node_count - 1) * d.unit_seconds / t.interval_down_s : 0.0;
    return d;
}

int backoff_window(const ProtocolParams& p, int i) {
    if (i < 0 || i > p.mac_max_csma_backoffs)
        throw std::invalid_argument("backoff stage " + std::to_string(i) +
                                    " out of range [0, " +
                                    std::to_string(p.mac_max_csma_backoffs) + "]");
    const int cap = p.mac_max_be - p.mac_min_be;
    const int exponent = p.mac_min_be + std::min(i, cap);
    return 1 << exponent;
}

DerivedTiming rounded_dwell_times(const DerivedTiming& t) {
    DerivedTiming r = t;
    r.success_units = static_cast<double>(std::lround(t.success_units));
    r.fail_units = static_cast<double>(std::lround(t.fail_units));
    return r;
}

}  // namespace meshmodel
