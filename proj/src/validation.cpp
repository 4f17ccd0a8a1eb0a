#include "meshmodel/validation.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "meshmodel/chain_oracle.hpp"
#include "meshmodel/csma_chain.hpp"
#include "meshmodel/neighborhood.hpp"

namespace meshmodel::validation {

namespace {

struct ChainGrid {
    std::vector<double> alpha, p_noack, p_send;
    std::vector<std::pair<int, int>> be;
    std::vector<int> backoffs, retries;
};

ChainGrid chain_grid() {
    ChainGrid g;
    for (int i = 0; i <= 9; ++i) g.alpha.push_back(i / 10.0);
    g.p_noack = {0.0, 0.25, 0.5, 0.9};
    g.p_send = {0.01, 0.5, 0.99};
    g.be = {{3, 5}, {0, 0}, {2, 7}};
    g.backoffs = {0, 4};
    g.retries = {0, 3};
    return g;
}

template <typename Fn>
void for_each_grid_point(Fn&& fn) {
    const ChainGrid g = chain_grid();
    const TrafficParams traffic;
    for (auto [min_be, max_be] : g.be) {
        for (int m : g.backoffs) {
            for (int n : g.retries) {
                ProtocolParams params;
                params.mac_min_be = min_be;
                params.mac_max_be = max_be;
                params.mac_max_csma_backoffs = m;
                params.mac_max_frame_retries = n;
                const DerivedTiming timing = derive_timing(params, traffic, 2);
                for (double alpha : g.alpha)
                    for (double pn : g.p_noack)
                        for (double ps : g.p_send) {
                            ChainInputs in;
                            in.alpha = alpha;
                            in.p_noack = pn;
                            in.p_send = ps;
                            in.params = params;
                            in.timing = timing;
                            fn(in);
                        }
            }
        }
    }
}

std::string describe(const ChainInputs& in) {
    std::ostringstream s;
    s << "alpha=" << in.alpha << " p_noack=" << in.p_noack << " p_send=" << in.p_send
      << " be=(" << in.params.mac_min_be << "," << in.params.mac_max_be << ")"
      << " m=" << in.params.mac_max_csma_backoffs << " n=" << in.params.mac_max_frame_retries;
    return s.str();
}

SuiteReport make_report(const char* name, double tolerance) {
    SuiteReport report;
    report.name = name;
    report.tolerance = tolerance;
    return report;
}

void track(SuiteReport& report, double error, const std::string& description) {
    ++report.cases;
    if (error > report.max_error) {
        report.max_error = error;
        report.worst_case = description;
    }
}

}  // namespace

SuiteReport run_chain_suite() {
    SuiteReport report = make_report("chain", 1e-9);
    for_each_grid_point([&](ChainInputs in) {
        in.timing = rounded_dwell_times(in.timing);
        const ChainOracle oracle(in);
        const ChainOutputs closed = closed_form(in);
        const double err = std::max({std::abs(closed.tau - oracle.tau()),
                                     std::abs(closed.b000 - oracle.b000()),
                                     std::abs(closed.idle - oracle.idle())});
        track(report, err, describe(in));
    });
    report.pass = report.max_error <= report.tolerance;
    return report;
}

SuiteReport run_chain_normalization_suite() {
    SuiteReport report = make_report("chain-normalization", 1e-9);
    for_each_grid_point([&](const ChainInputs& in) {
        const int m = in.params.mac_max_csma_backoffs;
        const int n = in.params.mac_max_frame_retries;
        const ChainOutputs closed = closed_form(in);
        double mass = closed.idle;
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= m; ++i)
                for (int k = 0; k < backoff_window(in.params, i); ++k)
                    mass += stationary_probability(in, i, k, j);
            mass += in.timing.success_units * sending_state_probability(in, j);
            mass += in.timing.fail_units * colliding_state_probability(in, j);
        }
        track(report, std::abs(mass - 1.0), describe(in));
    });
    report.pass = report.max_error <= report.tolerance;
    return report;
}

SuiteReport run_powerset_suite() {
    SuiteReport report = make_report("powerset", 1e-12);
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> size(0, 10);
    for (int draw = 0; draw < 1000; ++draw) {
        const int n = size(rng);
        SendingState state;
        std::vector<int> ids;
        for (int i = 0; i < n; ++i) {
            state.tau.push_back(unit(rng));
            state.alpha.push_back(unit(rng));
            ids.push_back(i);
        }
        const double product = some_sending(ids, state);
        const double powerset = some_sending_powerset_oracle(ids, state);
        std::ostringstream desc;
        desc << "draw " << draw << " size " << n;
        track(report, std::abs(product - powerset), desc.str());
    }
    report.pass = report.max_error <= report.tolerance;
    return report;
}

SuiteReport run_retrans_suite() {
    SuiteReport report = make_report("retrans", 1e-12);
    std::mt19937_64 rng(0xC0117EC7ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int draw = 0; draw < 100; ++draw) {
        CollisionBreakdown b;
        b.mutual_hidden = 0.5 * unit(rng);
        b.mutual_visible = 0.5 * unit(rng);
        const double mutual = 1.0 - (1.0 - b.mutual_hidden) * (1.0 - b.mutual_visible);
        b.p_lost_packet = mutual + unit(rng) * (1.0 - mutual);
        b.alpha = 0.9 * unit(rng);

        ProtocolParams params;
        params.mac_max_csma_backoffs = static_cast<int>(rng() % 5);
        params.mac_max_frame_retries = static_cast<int>(rng() % 6);

        RepeatedCollisionProbs repeat;
        repeat.p_bc1 = unit(rng);
        repeat.p_bsc1 = unit(rng);

        const RetransChain chain = build_retrans_chain(b, params, repeat);
        double row_defect = 0.0;
        for (const auto& row : chain.matrix) {
            double sum = 0.0;
            for (double entry : row) sum += entry;
            row_defect = std::max(row_defect, std::abs(sum - 1.0));
        }

        const int retries = params.mac_max_frame_retries;
        const double by_power = link_reliability(chain, retries);
        const double by_paths = retrans_success_by_enumeration(chain, retries + 1);
        std::ostringstream desc;
        desc << "draw " << draw << " m=" << params.mac_max_csma_backoffs << " n=" << retries;
        track(report, std::max(row_defect, std::abs(by_power - by_paths)), desc.str());
    }
    report.pass = report.max_error <= report.tolerance;
    return report;
}

double retrans_success_by_enumeration(const RetransChain& chain, int steps) {
    struct Walker {
        const RetransChain& chain;
        double visit(int state, int remaining) const {
            if (state == RetransChain::kSucc) return 1.0;
            if (state == RetransChain::kCf || remaining == 0) return 0.0;
            double total = 0.0;
            for (int next = 0; next < 6; ++next) {
                const double p = chain.matrix[static_cast<std::size_t>(state)]
                                             [static_cast<std::size_t>(next)];
                if (p > 0.0) total += p * visit(next, remaining - 1);
            }
            return total;
        }
    };
    return Walker{chain}.visit(RetransChain::kNoPending, steps);
}

std::vector<SuiteReport> run_suites(const std::string& which) {
    std::vector<SuiteReport> reports;
    const bool all = which == "all";
    if (all || which == "chain") {
        reports.push_back(run_chain_suite());
        reports.push_back(run_chain_normalization_suite());
    }
    if (all || which == "powerset") reports.push_back(run_powerset_suite());
    if (all || which == "retrans") reports.push_back(run_retrans_suite());
    if (reports.empty())
        throw std::invalid_argument("unknown validation suite '" + which +
                                    "' (expected chain, powerset, retrans or all)");
    return reports;
}

}  // namespace meshmodel::validation
