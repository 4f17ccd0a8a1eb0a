#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <vector>

#include "meshmodel/neighborhood.hpp"
#include "test_helpers.hpp"

using namespace meshmodel;

namespace {

SendingState uniform_state(std::size_t links, double tau, double alpha) {
    SendingState s;
    s.tau.assign(links, tau);
    s.alpha.assign(links, alpha);
    return s;
}

}  // namespace

TEST_CASE("some_sending basics") {
    const SendingState state = uniform_state(2, 0.1, 0.2);
    CHECK(some_sending(std::vector<int>{}, state) == 0.0);
    CHECK(some_sending(std::vector<int>{0}, state) == doctest::Approx(0.08).epsilon(1e-15));
    CHECK(some_sending(std::vector<int>{0, 1}, state) ==
          doctest::Approx(0.1536).epsilon(1e-15));
    CHECK_THROWS_AS(some_sending(std::vector<int>{7}, state), std::invalid_argument);
}

TEST_CASE("some_occupy window scaling") {
    const SendingState state = uniform_state(1, 0.1, 0.2);
    const std::vector<int> one{0};
    CHECK(some_occupy(1.0, one, state) == doctest::Approx(0.08).epsilon(1e-15));
    CHECK(some_occupy(0.0, one, state) == 0.0);
    CHECK(some_occupy(2.0, one, state) == doctest::Approx(0.1536).epsilon(1e-15));
    CHECK_THROWS_AS(some_occupy(-1.0, one, state), std::invalid_argument);
}

TEST_CASE("some_occupy grows with the window and with every member") {
    const SendingState state = uniform_state(4, 0.15, 0.3);
    const std::vector<int> all{0, 1, 2, 3};
    const std::vector<int> fewer{0, 1, 2};
    double previous = 0.0;
    for (double t : {0.5, 1.0, 2.0, 5.0, 12.7}) {
        const double p = some_occupy(t, all, state);
        CHECK(p >= previous);
        previous = p;
    }
    CHECK(some_occupy(2.0, fewer, state) <= some_occupy(2.0, all, state));
}

TEST_CASE("power-set oracle agrees with the product form") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int draw = 0; draw < 300; ++draw) {
        const std::size_t n = rng() % 11;
        SendingState state;
        std::vector<int> ids;
        for (std::size_t i = 0; i < n; ++i) {
            state.tau.push_back(unit(rng));
            state.alpha.push_back(unit(rng));
            ids.push_back(static_cast<int>(i));
        }
        CHECK(std::abs(some_sending(ids, state) - some_sending_powerset_oracle(ids, state)) <=
              1e-12);
    }
}

TEST_CASE("power-set oracle edge cases") {
    SendingState state = uniform_state(3, 0.4, 1.0);
    const std::vector<int> ids{0, 1, 2};
    CHECK(some_sending_powerset_oracle(std::vector<int>{}, state) == 0.0);
    // Every attempt defers when the channel is always busy.
    CHECK(some_sending_powerset_oracle(ids, state) == doctest::Approx(0.0).epsilon(1e-15));
    SendingState big = uniform_state(21, 0.1, 0.1);
    std::vector<int> too_many;
    for (int i = 0; i < 21; ++i) too_many.push_back(i);
    CHECK_THROWS_AS(some_sending_powerset_oracle(too_many, big), std::invalid_argument);
}

TEST_CASE("collision probabilities of an isolated link") {
    const ProtocolParams protocol;
    const Topology topo = build_topology(testing::isolated_pair(0.0), protocol);
    const DerivedTiming timing = derive_timing(protocol, TrafficParams{}, 2);
    const SendingState state = uniform_state(topo.links.size(), 0.3, 0.2);

    const CollisionBreakdown b =
        collision_probabilities(topo.links[0], topo.conflict[0], state, timing);
    for (double c : b.c) CHECK(c == 0.0);
    for (double a : b.a) CHECK(a == 0.0);
    CHECK(b.p_noack == 0.0);
    CHECK(b.alpha == 0.0);
}

TEST_CASE("isolated link with imperfect frames folds the two PERs") {
    const ProtocolParams protocol;
    Topology topo = build_topology(testing::isolated_pair(0.0), protocol);
    topo.links[0].per_packet = 0.1;
    topo.links[0].per_ack = 0.01;
    const DerivedTiming timing = derive_timing(protocol, TrafficParams{}, 2);
    const SendingState state = uniform_state(topo.links.size(), 0.0, 0.0);

    const CollisionBreakdown b =
        collision_probabilities(topo.links[0], topo.conflict[0], state, timing);
    CHECK(b.p_lost_packet == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(b.p_lost_ack == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(b.p_noack == doctest::Approx(0.109).epsilon(1e-15));
}

TEST_CASE("two fully mutually visible links") {
    // Both senders hear each other, so only the turnaround window event fires.
    std::vector<Link> links(2);
    links[0] = Link{0, 0, 1, Direction::up, 0, 0, 0};
    links[1] = Link{1, 2, 3, Direction::up, 0, 0, 0};
    CandidateGraph graph(4);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) graph.set_in_range(a, b, true);
    const auto sets = build_conflict_sets(links, graph);

    const ProtocolParams protocol;
    const DerivedTiming timing = derive_timing(protocol, TrafficParams{}, 4);
    const SendingState state = uniform_state(2, 0.1, 0.2);
    const CollisionBreakdown b = collision_probabilities(links[0], sets[0], state, timing);
    CHECK(b.c[0] == doctest::Approx(0.1536).epsilon(1e-15));
    CHECK(b.c[1] == 0.0);  // RS \ SS is empty
    CHECK(b.mutual_visible == doctest::Approx(0.1536).epsilon(1e-15));
    CHECK(b.mutual_hidden == 0.0);
    CHECK(b.alpha ==
          doctest::Approx(1.0 - (1.0 - b.alpha_pkt) * (1.0 - b.alpha_ack)).epsilon(1e-15));
}

TEST_CASE("aggregates respect their ordering invariants") {
    std::vector<Link> links(4);
    CandidateGraph graph(8);
    for (int i = 0; i < 4; ++i) links[i] = Link{i, 2 * i, 2 * i + 1, Direction::up, 0, 0.05, 0.01};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) graph.set_in_range(a, b, rng() % 2 == 0);
    const auto sets = build_conflict_sets(links, graph);

    const ProtocolParams protocol;
    const DerivedTiming timing = derive_timing(protocol, TrafficParams{}, 8);
    for (int trial = 0; trial < 20; ++trial) {
        SendingState state;
        for (int i = 0; i < 4; ++i) {
            state.tau.push_back(unit(rng));
            state.alpha.push_back(unit(rng));
        }
        for (const Link& link : links) {
            const CollisionBreakdown b = collision_probabilities(
                link, sets[static_cast<std::size_t>(link.id)], state, timing);
            CHECK(b.p_lost_packet >= b.p_coll_packet);
            CHECK(b.p_noack >= b.p_lost_packet);
            CHECK(b.alpha >= std::max(b.alpha_pkt, b.alpha_ack));
            double c_max = 0.0, c_sum = 0.0;
            for (double c : b.c) {
                c_max = std::max(c_max, c);
                c_sum += c;
            }
            CHECK(b.p_coll_packet >= c_max - 1e-15);
            CHECK(b.p_coll_packet <= std::min(1.0, c_sum) + 1e-15);
        }
    }
}
