#ifndef MESHMODEL_CHAIN_ORACLE_HPP
#define MESHMODEL_CHAIN_ORACLE_HPP

#include <vector>

#include "meshmodel/csma_chain.hpp"

namespace meshmodel {

/// Brute-force cross-check of the closed forms: enumerates every chain state,
/// fills the one-step transition matrix from the MAC rules, and solves
/// pi P = pi, sum(pi) = 1 with a sparse LU factorization. Dwell times are
/// rounded to whole steps; feed the closed form the same rounded values when
/// comparing (rounded_dwell_times).
class ChainOracle {
  public:
    explicit ChainOracle(const ChainInputs& inputs);

    double tau() const { return tau_; }
    double b000() const { return b000_; }
    double idle() const { return idle_; }

    int state_count() const { return static_cast<int>(pi_.size()); }
    int success_steps() const { return ls_; }
    int collision_steps() const { return lc_; }

    double backoff_pi(int i, int k, int j) const;
    double sending_pi(int h, int j) const;
    double colliding_pi(int h, int j) const;
    double total_mass() const;

  private:
    int index_backoff(int i, int k, int j) const;
    int index_sending(int h, int j) const;
    int index_colliding(int h, int j) const;

    int m_, n_, ls_, lc_;
    std::vector<int> window_;
    std::vector<int> stage_offset_;
    int sending_base_ = 0, colliding_base_ = 0;
    std::vector<double> pi_;
    double tau_ = 0.0, b000_ = 0.0, idle_ = 0.0;
};

inline ChainOracle build_chain_oracle(const ChainInputs& inputs) { return ChainOracle(inputs); }

}  // namespace meshmodel

#endif
