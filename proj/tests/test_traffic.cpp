#include <doctest.h>

#include <stdexcept>

#include "meshmodel/config_io.hpp"
#include "meshmodel/traffic.hpp"
#include "test_helpers.hpp"

using namespace meshmodel;

namespace {

const ProtocolParams kProtocol{};

ExplicitTopologyInput star(int clients) {
    ExplicitTopologyInput input;
    input.node_count = clients + 1;
    input.gateway = 0;
    for (int c = 1; c <= clients; ++c) input.links.push_back({c, 0, 0.0});
    return input;
}

}  // namespace

TEST_CASE("star with two clients and perfect links") {
    const Topology topo = build_topology(star(2), kProtocol);
    TrafficParams traffic;
    const DerivedTiming timing = derive_timing(kProtocol, traffic, topo.node_count());
    const FlowState flow = distribute_traffic(topo, timing, std::vector<double>(4, 1.0));

    for (int c : {1, 2}) {
        const int up = topo.up_link_of[static_cast<std::size_t>(c)];
        const int down = topo.down_link_of[static_cast<std::size_t>(c)];
        CHECK(flow.rate[static_cast<std::size_t>(up)] == doctest::Approx(timing.rate_up));
        CHECK(flow.forwarded[static_cast<std::size_t>(up)] ==
              doctest::Approx(timing.rate_up));
        // Leaves consume everything they receive.
        CHECK(flow.rate[static_cast<std::size_t>(down)] ==
              doctest::Approx(timing.rate_down / 2.0));
        CHECK(flow.forwarded[static_cast<std::size_t>(down)] == 0.0);
    }
}

TEST_CASE("chain accumulates upstream traffic towards the gateway") {
    const Topology topo = build_topology(testing::chain3(), kProtocol);
    TrafficParams traffic;
    const DerivedTiming timing = derive_timing(kProtocol, traffic, 3);
    const FlowState flow = distribute_traffic(topo, timing, std::vector<double>(4, 1.0));

    const int far_up = topo.up_link_of[2];
    const int near_up = topo.up_link_of[1];
    CHECK(flow.rate[static_cast<std::size_t>(far_up)] == doctest::Approx(timing.rate_up));
    CHECK(flow.rate[static_cast<std::size_t>(near_up)] ==
          doctest::Approx(2.0 * timing.rate_up));

    // Downstream: the relay keeps 1/2 of the gateway's output for itself.
    const int near_down = topo.down_link_of[1];
    const int far_down = topo.down_link_of[2];
    CHECK(flow.rate[static_cast<std::size_t>(near_down)] == doctest::Approx(timing.rate_down));
    CHECK(flow.rate[static_cast<std::size_t>(far_down)] ==
          doctest::Approx(timing.rate_down / 2.0));
}

TEST_CASE("a dead link forwards nothing") {
    const Topology topo = build_topology(testing::chain3(), kProtocol);
    TrafficParams traffic;
    const DerivedTiming timing = derive_timing(kProtocol, traffic, 3);
    std::vector<double> reliability(4, 1.0);
    reliability[static_cast<std::size_t>(topo.up_link_of[2])] = 0.0;
    const FlowState flow = distribute_traffic(topo, timing, reliability);
    CHECK(flow.forwarded[static_cast<std::size_t>(topo.up_link_of[2])] == 0.0);
    CHECK(flow.rate[static_cast<std::size_t>(topo.up_link_of[1])] ==
          doctest::Approx(timing.rate_up));
}

TEST_CASE("flow conservation on a generated tree with perfect reliability") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::uniform_random;
    spec.count = 40;
    spec.extent_m = 80.0;
    spec.seed = 99;
    const RadioParams radio{0.0, -95.0, -87.0};
    const Topology topo = build_topology(generate_nodes(spec), radio, kProtocol);
    TrafficParams traffic;
    traffic.interval_down_s = 3.0;
    const DerivedTiming timing = derive_timing(kProtocol, traffic, topo.node_count());
    const FlowState flow =
        distribute_traffic(topo, timing, std::vector<double>(topo.links.size(), 1.0));

    double gateway_inflow = 0.0;
    for (int c : topo.tree.children[static_cast<std::size_t>(topo.gateway())])
        gateway_inflow += flow.rate[static_cast<std::size_t>(topo.up_link_of[static_cast<std::size_t>(c)])];
    CHECK(gateway_inflow ==
          doctest::Approx((topo.node_count() - 1) * timing.rate_up).epsilon(1e-12));

    // Downstream split fractions out of every interior node sum to one.
    for (int v = 0; v < topo.node_count(); ++v) {
        const auto dv = topo.tree.descendant_count[static_cast<std::size_t>(v)];
        if (dv == 0) continue;
        double fraction = 0.0;
        for (int w : topo.tree.children[static_cast<std::size_t>(v)])
            fraction += (1.0 + topo.tree.descendant_count[static_cast<std::size_t>(w)]) / dv;
        CHECK(fraction == doctest::Approx(1.0).epsilon(1e-12));
    }

    // Every node's consumed downstream share adds back up to the generation rate.
    double consumed = 0.0;
    for (int v = 0; v < topo.node_count(); ++v) {
        if (v == topo.gateway()) continue;
        const auto l = static_cast<std::size_t>(topo.down_link_of[static_cast<std::size_t>(v)]);
        consumed += flow.rate[l] - flow.forwarded[l];
    }
    CHECK(consumed == doctest::Approx(timing.rate_down).epsilon(1e-12));
}

TEST_CASE("raising a reliability never lowers any flow") {
    const Topology topo = build_topology(testing::chain3(), kProtocol);
    TrafficParams traffic;
    const DerivedTiming timing = derive_timing(kProtocol, traffic, 3);
    std::vector<double> low(4, 0.5);
    std::vector<double> high = low;
    high[static_cast<std::size_t>(topo.up_link_of[2])] = 0.9;
    const FlowState before = distribute_traffic(topo, timing, low);
    const FlowState after = distribute_traffic(topo, timing, high);
    for (std::size_t l = 0; l < 4; ++l) CHECK(after.rate[l] >= before.rate[l]);
}

TEST_CASE("pending probability stays a probability") {
    const Topology topo = build_topology(testing::chain3(), kProtocol);
    TrafficParams traffic;
    traffic.interval_up_s = 1e-6;  // absurd load
    const DerivedTiming timing = derive_timing(kProtocol, traffic, 3);
    const FlowState flow = distribute_traffic(topo, timing, std::vector<double>(4, 1.0));
    for (double p : flow.p_send) {
        CHECK(p >= 0.0);
        CHECK(p < 1.0);
    }
}

TEST_CASE("invalid reliabilities are rejected") {
    const Topology topo = build_topology(testing::chain3(), kProtocol);
    TrafficParams traffic;
    const DerivedTiming timing = derive_timing(kProtocol, traffic, 3);
    CHECK_THROWS_AS(distribute_traffic(topo, timing, std::vector<double>(4, 1.5)),
                    std::invalid_argument);
    CHECK_THROWS_AS(distribute_traffic(topo, timing, std::vector<double>(3, 1.0)),
                    std::invalid_argument);
}
