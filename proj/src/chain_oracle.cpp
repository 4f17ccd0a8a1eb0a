#include "meshmodel/chain_oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace meshmodel {

namespace {
constexpr int kIdle = 0;
}

int ChainOracle::index_backoff(int i, int k, int j) const {
    // Stage blocks are laid out per retry index j, then stage i, then k.
    return 1 + j * stage_offset_[static_cast<std::size_t>(m_ + 1)] +
           stage_offset_[static_cast<std::size_t>(i)] + k;
}

int ChainOracle::index_sending(int h, int j) const { return sending_base_ + j * ls_ + h; }

int ChainOracle::index_colliding(int h, int j) const { return colliding_base_ + j * lc_ + h; }

double ChainOracle::backoff_pi(int i, int k, int j) const {
    return pi_[static_cast<std::size_t>(index_backoff(i, k, j))];
}

double ChainOracle::sending_pi(int h, int j) const {
    return pi_[static_cast<std::size_t>(index_sending(h, j))];
}

double ChainOracle::colliding_pi(int h, int j) const {
    return pi_[static_cast<std::size_t>(index_colliding(h, j))];
}

double ChainOracle::total_mass() const {
    return std::accumulate(pi_.begin(), pi_.end(), 0.0);
}

ChainOracle::ChainOracle(const ChainInputs& in) {
    in.params.validate();
    m_ = in.params.mac_max_csma_backoffs;
    n_ = in.params.mac_max_frame_retries;
    ls_ = static_cast<int>(std::lround(in.timing.success_units));
    lc_ = static_cast<int>(std::lround(in.timing.fail_units));
    if (ls_ < 1 || lc_ < 1)
        throw std::invalid_argument("transmission dwell shorter than one time unit");

    window_.resize(static_cast<std::size_t>(m_ + 1));
    stage_offset_.assign(static_cast<std::size_t>(m_ + 2), 0);
    for (int i = 0; i <= m_; ++i) {
        window_[static_cast<std::size_t>(i)] = backoff_window(in.params, i);
        stage_offset_[static_cast<std::size_t>(i + 1)] =
            stage_offset_[static_cast<std::size_t>(i)] + window_[static_cast<std::size_t>(i)];
    }
    const int per_retry = stage_offset_[static_cast<std::size_t>(m_ + 1)];
    sending_base_ = 1 + (n_ + 1) * per_retry;
    colliding_base_ = sending_base_ + (n_ + 1) * ls_;
    const int states = colliding_base_ + (n_ + 1) * lc_;

    const double ps = in.p_send;
    const double alpha = in.alpha;
    const double pn = in.p_noack;
    const double w0 = static_cast<double>(window_[0]);

    std::vector<Eigen::Triplet<double>> transitions;
    transitions.reserve(static_cast<std::size_t>(states) * 3);
    std::vector<double> row_sum(static_cast<std::size_t>(states), 0.0);
    auto add = [&](int from, int to, double p) {
        if (p == 0.0) return;
        transitions.emplace_back(to, from, p);  // transposed for pi P = pi
        row_sum[static_cast<std::size_t>(from)] += p;
    };

    add(kIdle, kIdle, 1.0 - ps);
    for (int k = 0; k < window_[0]; ++k) add(kIdle, index_backoff(0, k, 0), ps / w0);

    for (int j = 0; j <= n_; ++j) {
        for (int i = 0; i <= m_; ++i) {
            for (int k = 1; k < window_[static_cast<std::size_t>(i)]; ++k)
                add(index_backoff(i, k, j), index_backoff(i, k - 1, j), 1.0);

            const int sensing = index_backoff(i, 0, j);
            if (i < m_) {
                const int wi1 = window_[static_cast<std::size_t>(i + 1)];
                for (int k = 0; k < wi1; ++k)
                    add(sensing, index_backoff(i + 1, k, j), alpha / wi1);
            } else {
                add(sensing, kIdle, alpha);
            }
            add(sensing, index_colliding(0, j), (1.0 - alpha) * pn);
            add(sensing, index_sending(0, j), (1.0 - alpha) * (1.0 - pn));
        }

        for (int h = 0; h + 1 < ls_; ++h)
            add(index_sending(h, j), index_sending(h + 1, j), 1.0);
        add(index_sending(ls_ - 1, j), kIdle, 1.0);

        for (int h = 0; h + 1 < lc_; ++h)
            add(index_colliding(h, j), index_colliding(h + 1, j), 1.0);
        if (j < n_) {
            for (int k = 0; k < window_[0]; ++k)
                add(index_colliding(lc_ - 1, j), index_backoff(0, k, j + 1), 1.0 / w0);
        } else {
            add(index_colliding(lc_ - 1, n_), kIdle, 1.0);
        }
    }

    for (int s = 0; s < states; ++s)
        if (std::abs(row_sum[static_cast<std::size_t>(s)] - 1.0) > 1e-12)
            throw std::logic_error("transition row " + std::to_string(s) +
                                   " sums to " + std::to_string(row_sum[static_cast<std::size_t>(s)]));

    // (P^T - I) pi = 0 with the idle equation replaced by sum(pi) = 1.
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(transitions.size() + 2 * static_cast<std::size_t>(states));
    for (const auto& t : transitions)
        if (t.row() != kIdle) triplets.emplace_back(t);
    for (int s = 0; s < states; ++s) {
        if (s != kIdle) triplets.emplace_back(s, s, -1.0);
        triplets.emplace_back(kIdle, s, 1.0);
    }

    Eigen::SparseMatrix<double> a(states, states);
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("stationary solve failed to factorize");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(states);
    rhs[kIdle] = 1.0;
    Eigen::VectorXd pi = lu.solve(rhs);

    pi_.assign(pi.data(), pi.data() + states);
    idle_ = pi_[kIdle];
    b000_ = backoff_pi(0, 0, 0);
    tau_ = 0.0;
    for (int j = 0; j <= n_; ++j)
        for (int i = 0; i <= m_; ++i) tau_ += backoff_pi(i, 0, j);
}

}  // namespace meshmodel
