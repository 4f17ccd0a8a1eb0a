#include "meshmodel/neighborhood.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace meshmodel {

namespace {

void check_link_ids(std::span<const int> links, const SendingState& state) {
    for (int id : links)
        if (id < 0 || static_cast<std::size_t>(id) >= state.tau.size())
            throw std::invalid_argument("unknown link id " + std::to_string(id));
}

}  // namespace

double some_sending(std::span<const int> links, const SendingState& state) {
    check_link_ids(links, state);
    double none = 1.0;
    for (int id : links) {
        const double tau = state.tau[static_cast<std::size_t>(id)];
        const double alpha = state.alpha[static_cast<std::size_t>(id)];
        none *= tau * alpha + (1.0 - tau);
    }
    return 1.0 - none;
}

double some_occupy(double t, std::span<const int> links, const SendingState& state) {
    if (t < 0.0) throw std::invalid_argument("some_occupy: negative time window");
    return 1.0 - std::pow(1.0 - some_sending(links, state), t);
}

double some_sending_powerset_oracle(std::span<const int> links, const SendingState& state) {
    check_link_ids(links, state);
    const std::size_t n = links.size();
    if (n > 20) throw std::invalid_argument("power-set oracle limited to 20 links");
    double total = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        double p_tau = 1.0;
        double prod_alpha = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const int id = links[i];
            const double tau = state.tau[static_cast<std::size_t>(id)];
            const double alpha = state.alpha[static_cast<std::size_t>(id)];
            if (mask & (1u << i)) {
                p_tau *= tau;
                prod_alpha *= alpha;
            } else {
                p_tau *= 1.0 - tau;
            }
        }
        total += p_tau * (1.0 - prod_alpha);
    }
    return total;
}

double union_independent(std::span<const double> probabilities) {
    double none = 1.0;
    for (double p : probabilities) none *= 1.0 - p;
    return 1.0 - none;
}

CollisionBreakdown collision_probabilities(const Link& link, const LinkSets& sets,
                                           const SendingState& state,
                                           const DerivedTiming& timing) {
    const double len = timing.packet_units;
    const double ack = timing.ack_units;

    auto occupy = [&](double t, const std::vector<int>& set) {
        if (t < 1.0)
            throw std::logic_error("collision window shorter than one time unit");
        return some_occupy(t, set, state);
    };

    CollisionBreakdown b;
    b.c[0] = occupy(2.0, sets.c0);
    b.c[1] = occupy(2.0 * len, sets.c1);
    b.c[2] = occupy(1.0, sets.c2);
    b.c[3] = occupy(2.0, sets.c3);
    b.c[4] = occupy(ack, sets.c4);
    b.c[5] = occupy(ack + 1.0, sets.c5);
    b.c[6] = occupy(len + ack, sets.c6);
    b.a[0] = occupy(1.0, sets.a0);
    b.a[1] = occupy(ack, sets.a1);
    b.mutual_hidden = occupy(2.0 * len + 2.0, sets.mutual_hidden);
    b.mutual_visible = occupy(2.0, sets.mutual_visible);

    b.p_coll_packet = union_independent(b.c);
    b.p_lost_packet = b.p_coll_packet + (1.0 - b.p_coll_packet) * link.per_packet;
    b.p_coll_ack = union_independent(b.a);
    b.p_lost_ack = b.p_coll_ack + (1.0 - b.p_coll_ack) * link.per_ack;
    b.p_noack = b.p_lost_packet + (1.0 - b.p_lost_packet) * b.p_lost_ack;

    b.alpha_pkt = some_occupy(len, sets.ss, state);
    b.alpha_ack = some_occupy(ack, sets.sr, state);
    b.alpha = b.alpha_pkt + b.alpha_ack - b.alpha_pkt * b.alpha_ack;
    return b;
}

}  // namespace meshmodel
