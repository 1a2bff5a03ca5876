#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "cmdp/grid.hpp"
#include "cmdp/learner.hpp"
#include "cmdp/mdp.hpp"

namespace cmdp {

/// Visit counters over (state, parent value, next state) tuples.
class CountTables {
public:
    CountTables(int num_states, int num_parent_values)
        : n_szy_(num_states, num_parent_values, num_states),
          n_sz_(num_states, num_parent_values) {}

    void update(int state, int parent_value, int next_state);

    /// Empirical next-state row for a visited pair, or nullopt while the pair
    /// is unvisited. Rows are exact ratios of integers and sum to 1.
    std::optional<std::vector<double>> empirical_transition(int state, int parent_value) const;

    std::int64_t visits(int state, int parent_value) const { return n_sz_(state, parent_value); }
    const Grid3<std::int64_t>& triple_counts() const { return n_szy_; }
    const Grid2<std::int64_t>& pair_counts() const { return n_sz_; }

private:
    Grid3<std::int64_t> n_szy_;
    Grid2<std::int64_t> n_sz_;
};

/// Exploration-bonus constants for C-UCBVI; L = ln(5*S*H*K*Z*T/delta) with
/// K and T the configured run totals. `scale` multiplies the bonus; 1 is the
/// literal constant, experiment presets document their calibrated values.
struct BonusParams {
    double delta = 0.05;
    int horizon = 0;
    int num_states = 0;
    int num_parent_values = 0;
    int num_episodes = 0;
    std::int64_t total_steps = 0;
    double log_term = 0.0;
    double scale = 1.0;

    static BonusParams make(double delta, int horizon, int num_states, int num_parent_values,
                            int num_episodes, double scale = 1.0);
};

/// b = scale * 7*H*L*sqrt(S/n), unclipped. n must be >= 1; unvisited pairs
/// bypass the bonus entirely (they are pinned to q = H in the backup).
double hoeffding_bonus(const BonusParams& params, std::int64_t num_visits);

/// What Assumption 1 grants a causal learner: sizes, P(z|s,a) and R(s,z).
/// Owns copies so a learner can never reach the true transition table.
struct CausalView {
    int num_states = 0;
    int num_actions = 0;
    int num_parent_values = 0;
    int horizon = 0;
    Grid3<double> parent_probs;
    Grid2<double> reward;

    static CausalView from(const CausalMdp& mdp);
};

/// Transition estimate fed to the backup; built from counts in the production
/// path, or from true tables in plug-in oracle tests.
struct CausalBelief {
    Grid3<double> p_hat;            // rows of unvisited pairs are zero
    Grid2<std::uint8_t> visited;
    Grid2<std::int64_t> visits;

    static CausalBelief from_counts(const CountTables& counts);
    static CausalBelief exact(const Grid3<double>& transition_probs);
};

/// One optimistic backward induction pass: visited pairs get
/// q = min(H, R(s,z) + P_hat V + b), unvisited pairs get q = H, then
/// Q(s,a) = sum_z P(z|s,a) q(s,z) and V(s) = max_a Q(s,a).
QTables cucbvi_backup(const CausalBelief& belief, const CausalView& view,
                      const BonusParams& params);
QTables cucbvi_backup(const CountTables& counts, const CausalView& view,
                      const BonusParams& params);

/// C-UCBVI: counts over (s,z) pairs, optimistic q/Q/V tables, greedy actions.
class CUcbviLearner final : public Learner {
public:
    CUcbviLearner(const CausalMdp& mdp, BonusParams params);

    std::string_view name() const override { return "c-ucbvi"; }
    void plan() override;
    int act(int state, int level) override { return greedy_action(tables_, state, level); }
    void observe(const Trajectory& trajectory) override;
    double value_bound(int state) const override { return tables_.value(0, state); }

    const QTables& tables() const { return tables_; }
    const CountTables& counts() const { return counts_; }

private:
    CausalView view_;
    BonusParams params_;
    CountTables counts_;
    QTables tables_;
};

}  // namespace cmdp
