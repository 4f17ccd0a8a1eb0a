#include "meshmodel/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace meshmodel {

namespace {

double union2(double p1, double p2) { return 1.0 - (1.0 - p1) * (1.0 - p2); }

double union3(double p1, double p2, double p3) {
    return 1.0 - (1.0 - p1) * (1.0 - p2) * (1.0 - p3);
}

using Matrix6 = std::array<std::array<double, 6>, 6>;

Matrix6 multiply(const Matrix6& a, const Matrix6& b) {
    Matrix6 r{};
    for (int i = 0; i < 6; ++i)
        for (int k = 0; k < 6; ++k) {
            const double aik = a[i][k];
            if (aik == 0.0) continue;
            for (int j = 0; j < 6; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

}  // namespace

RepeatedCollisionProbs repeated_collision_probs(const ProtocolParams& params,
                                                const DerivedTiming& timing) {
    const double w0 = static_cast<double>(backoff_window(params, 0));
    RepeatedCollisionProbs r;
    r.omega = static_cast<int>(std::floor(std::max(w0 - timing.packet_units - 1.0, 0.0)));
    const double omega = static_cast<double>(r.omega);
    r.p_bc1 = 1.0 - (omega + omega * omega) / (w0 * w0);
    r.p_bsc1 = 1.0 / w0;
    return r;
}

RetransChain build_retrans_chain(const CollisionBreakdown& breakdown,
                                 const ProtocolParams& params,
                                 const RepeatedCollisionProbs& repeat) {
    RetransChain chain;
    chain.repeat = repeat;
    const int m = params.mac_max_csma_backoffs;
    const double alpha_m1 = std::pow(breakdown.alpha, m + 1);
    chain.b = 1.0 - alpha_m1;
    const double lost = breakdown.p_lost_packet;
    const double mh = breakdown.mutual_hidden;
    const double mv = breakdown.mutual_visible;

    chain.matrix[RetransChain::kSucc][RetransChain::kSucc] = 1.0;
    chain.matrix[RetransChain::kCf][RetransChain::kCf] = 1.0;

    static constexpr const char* kStateName[6] = {"succ", "cf", "(0,0)", "(1,0)", "(0,1)", "(1,1)"};
    for (int p = 0; p <= 1; ++p) {
        for (int q = 0; q <= 1; ++q) {
            const int row = 2 + p + 2 * q;
            const double bc = p ? repeat.p_bc1 : 0.0;
            const double bsc = q ? repeat.p_bsc1 : 0.0;
            auto& r = chain.matrix[static_cast<std::size_t>(row)];
            r[RetransChain::kCf] = alpha_m1;
            r[RetransChain::kSucc] = chain.b * (1.0 - union3(lost, bc, bsc));
            r[2] = chain.b * (lost - union2(mh, mv)) * (1.0 - union2(bc, bsc));
            r[3] = chain.b * union2(mh, bc) * (1.0 - union2(mv, bsc));
            r[4] = chain.b * (1.0 - union2(mh, bc)) * union2(mv, bsc);
            r[5] = chain.b * union2(mh, bc) * union2(mv, bsc);

            double sum = 0.0;
            for (int col = 0; col < 6; ++col) {
                if (r[static_cast<std::size_t>(col)] < -1e-12 ||
                    r[static_cast<std::size_t>(col)] > 1.0 + 1e-12)
                    throw std::runtime_error(
                        std::string("retransmission chain entry ") + kStateName[row] + " -> " +
                        kStateName[col] + " = " +
                        std::to_string(r[static_cast<std::size_t>(col)]) +
                        " outside [0, 1]; the collision model is inconsistent for this link");
                r[static_cast<std::size_t>(col)] =
                    std::clamp(r[static_cast<std::size_t>(col)], 0.0, 1.0);
                sum += r[static_cast<std::size_t>(col)];
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw std::runtime_error(std::string("retransmission chain row ") +
                                         kStateName[row] + " sums to " + std::to_string(sum));
            for (auto& entry : r) entry /= sum;
        }
    }
    return chain;
}

double link_reliability(const RetransChain& chain, int max_frame_retries) {
    if (max_frame_retries < 0)
        throw std::invalid_argument("max_frame_retries: must be >= 0");
    Matrix6 power = chain.matrix;
    for (int step = 0; step < max_frame_retries; ++step) power = multiply(power, chain.matrix);
    return power[RetransChain::kNoPending][RetransChain::kSucc];
}

PathReliability path_reliabilities(const Topology& topo, const std::vector<double>& link_r) {
    if (link_r.size() != topo.links.size())
        throw std::invalid_argument("link reliability vector size mismatch");
    const int n = topo.node_count();
    PathReliability p;
    p.r_up.assign(static_cast<std::size_t>(n), 1.0);
    p.r_down.assign(static_cast<std::size_t>(n), 1.0);

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return topo.tree.depth[static_cast<std::size_t>(a)] <
               topo.tree.depth[static_cast<std::size_t>(b)];
    });
    for (int v : order) {
        if (v == topo.gateway()) continue;
        const int parent = topo.tree.parent[static_cast<std::size_t>(v)];
        const int up = topo.up_link_of[static_cast<std::size_t>(v)];
        const int down = topo.down_link_of[static_cast<std::size_t>(v)];
        p.r_up[static_cast<std::size_t>(v)] = p.r_up[static_cast<std::size_t>(parent)] *
                                              link_r[static_cast<std::size_t>(up)];
        p.r_down[static_cast<std::size_t>(v)] = p.r_down[static_cast<std::size_t>(parent)] *
                                                link_r[static_cast<std::size_t>(down)];
    }
    return p;
}

}  // namespace meshmodel
