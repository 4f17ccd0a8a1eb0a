#ifndef MESHMODEL_MODEL_CONFIG_HPP
#define MESHMODEL_MODEL_CONFIG_HPP

#include <cstdint>

namespace meshmodel {

/// MAC/PHY constants of unslotted IEEE 802.15.4 CSMA/CA (O-QPSK PHY).
/// Defaults are the standard's defaults.
struct ProtocolParams {
    int mac_min_be = 3;             // initial backoff exponent
    int mac_max_be = 5;             // maximum backoff exponent
    int mac_max_csma_backoffs = 4;  // extra backoffs after the first one
    int mac_max_frame_retries = 3;  // retransmissions per packet
    int packet_bytes = 127;         // data frame length B

    // Fixed by the O-QPSK PHY; not configurable.
    static constexpr int ack_bytes = 11;
    static constexpr int ifs_symbols = 40;
    static constexpr int t_ack_symbols = 12;
    static constexpr int ack_wait_symbols = 54;  // macAckWaitDuration

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Poisson traffic generation intervals. A disabled direction is a rate of
/// zero, never an infinite interval.
struct TrafficParams {
    double interval_up_s = 1.0;
    double interval_down_s = 1.0;
    bool upstream_enabled = true;
    bool downstream_enabled = true;

    void validate() const;
};

/// Durations in backoff-period time units (S_b = 320 us) and per-unit
/// generation rates, all derived from ProtocolParams/TrafficParams.
struct DerivedTiming {
    double unit_seconds = 0.0;   // S_b
    double packet_units = 0.0;   // L   = B/10
    double ack_units = 0.0;      // L_ack = 1.1
    double success_units = 0.0;  // L_s = L + L_ack + 2.6
    double fail_units = 0.0;     // L_c = L + 2.7
    double rate_up = 0.0;        // packets per unit, per client
    double rate_down = 0.0;      // packets per unit, whole gateway
};

/// Computes all timing quantities. node_count is the total including the
/// gateway; the gateway generates downstream packets for every client.
DerivedTiming derive_timing(const ProtocolParams& p, const TrafficParams& t,
                            int node_count);

/// Backoff window W_i for channel-access attempt i (0-based). Grows as
/// 2^i * 2^macMinBE until the exponent saturates at macMaxBE.
int backoff_window(const ProtocolParams& p, int i);

/// Rounds the transmission dwell times to whole units. The explicit
/// stationary-distribution solve needs an integer state space; closed forms
/// being compared against it must be fed the same rounded values.
DerivedTiming rounded_dwell_times(const DerivedTiming& t);

}  // namespace meshmodel

#endif
