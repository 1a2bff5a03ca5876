#pragma once

#include <span>
#include <vector>

#include "cmdp/grid.hpp"
#include "cmdp/rng.hpp"

namespace cmdp {

/// Ground-truth model of a causal MDP: actions influence the next state and
/// reward only through the parent-variable assignment z, i.e.
///   P(s'|s,a) = sum_z P(s'|s,z) P(z|s,a),  R(s,a) = sum_z R(s,z) P(z|s,a).
/// All probability rows are validated at construction.
class CausalMdp {
public:
    CausalMdp(int horizon, Grid3<double> parent_probs, Grid3<double> transition_probs,
              Grid2<double> reward);

    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    int num_parent_values() const { return num_parent_values_; }
    int horizon() const { return horizon_; }

    /// P(z|s,a), indexed [state][action][parent value].
    const Grid3<double>& parent_probs() const { return parent_probs_; }
    /// P(s'|s,z), indexed [state][parent value][next state].
    const Grid3<double>& transition_probs() const { return transition_probs_; }
    /// R(s,z), indexed [state][parent value]. Finite and non-negative.
    const Grid2<double>& reward() const { return reward_; }

private:
    int num_states_, num_actions_, num_parent_values_, horizon_;
    Grid3<double> parent_probs_;
    Grid3<double> transition_probs_;
    Grid2<double> reward_;
};

/// Factorization of a causal MDP's dynamics over state factors:
///   P(s'|s,z) = prod_i P_i(s'[i] | s[I_i], z),  R(s,z) = sum_i R_i(s[J_i], z).
/// States are dense little-endian mixed-radix codes over factor_sizes.
class FactoredSpec {
public:
    FactoredSpec(std::vector<int> factor_sizes, std::vector<std::vector<int>> transition_scopes,
                 std::vector<std::vector<int>> reward_scopes, std::vector<Grid3<double>> scope_probs,
                 std::vector<Grid2<double>> scope_rewards);

    int num_factors() const { return static_cast<int>(factor_sizes_.size()); }
    int num_states() const { return num_states_; }
    int num_parent_values() const { return scope_probs_.empty() ? 0 : scope_probs_[0].dim1(); }
    const std::vector<int>& factor_sizes() const { return factor_sizes_; }
    const std::vector<std::vector<int>>& transition_scopes() const { return transition_scopes_; }
    const std::vector<std::vector<int>>& reward_scopes() const { return reward_scopes_; }
    /// P_i(s'[i] | s[I_i], z), indexed [scope value][parent value][factor value].
    const std::vector<Grid3<double>>& scope_probs() const { return scope_probs_; }
    /// R_i(s[J_i], z), indexed [scope value][parent value].
    const std::vector<Grid2<double>>& scope_rewards() const { return scope_rewards_; }

    /// Dense index of s[I_i] for factor i, precomputed for every state.
    int transition_scope_index(int factor, int state) const {
        return trans_scope_index_[factor][state];
    }
    int reward_scope_index(int factor, int state) const {
        return reward_scope_index_[factor][state];
    }
    /// Value of factor i in state s.
    int factor_value(int factor, int state) const { return factor_value_[factor][state]; }

    /// Expands the product rule into a flat P(s'|s,z) table.
    Grid3<double> expand_transition() const;
    /// Expands the sum rule into a flat R(s,z) table.
    Grid2<double> expand_reward() const;

private:
    std::vector<int> factor_sizes_;
    std::vector<std::vector<int>> transition_scopes_;
    std::vector<std::vector<int>> reward_scopes_;
    std::vector<Grid3<double>> scope_probs_;
    std::vector<Grid2<double>> scope_rewards_;
    int num_states_ = 0;
    std::vector<std::vector<int>> trans_scope_index_;
    std::vector<std::vector<int>> reward_scope_index_;
    std::vector<std::vector<int>> factor_value_;
};

/// Checks that `spec` reproduces `mdp`'s transition and reward tables
/// entrywise within `tol`; throws std::invalid_argument otherwise.
void validate_factorization(const CausalMdp& mdp, const FactoredSpec& spec, double tol = 1e-9);

/// One environment step as seen by a learner: the realized parent assignment
/// is observed alongside the transition.
struct TrajectoryStep {
    int state = 0;
    int action = 0;
    int parent_value = 0;
    int next_state = 0;
    double reward = 0.0;
};

/// A full episode; step h holds (s_h, a_h, z_h, s_{h+1}).
using Trajectory = std::vector<TrajectoryStep>;

/// Deterministic policy: action at [level][state], levels 0..H-1.
using Policy = Grid2<int>;
/// Stochastic policy: action distribution at [level][state][action].
using MixedPolicy = Grid3<double>;

/// Backward-induction output; value has H+1 rows with row H identically zero.
struct ValueTables {
    Grid2<double> value;      // [H+1][S]
    Grid3<double> q_action;   // [H][S][A]
};

/// P(.|s,a) composed through the parent variables; writes into `out` (size S).
void compose_transition(const CausalMdp& mdp, int state, int action, std::span<double> out);
std::vector<double> compose_transition(const CausalMdp& mdp, int state, int action);

/// R(s,a) composed through the parent variables.
double compose_reward(const CausalMdp& mdp, int state, int action);

/// Optimal V*/Q* by backward induction on the composed model.
ValueTables exact_value_iteration(const CausalMdp& mdp);

/// Exact evaluation of a deterministic policy (no sampling).
ValueTables policy_value(const CausalMdp& mdp, const Policy& policy);
/// Exact evaluation of a stochastic policy; zero-weight actions are skipped,
/// so point-mass rows cost the same as the deterministic overload.
ValueTables policy_value(const CausalMdp& mdp, const MixedPolicy& policy);

/// Samples one episode: z_h ~ P(.|s_h,a_h) then s_{h+1} ~ P(.|s_h,z_h),
/// recording the realized z_h for learner consumption.
Trajectory episode_rollout(const CausalMdp& mdp, const Policy& policy, int start_state, Rng& rng);

/// Per-episode regret increment V*_1(s1) - V^pi_1(s1). Throws std::logic_error
/// if the increment is below -1e-9 (the optimal value must dominate).
double regret_increment(double optimal_value, double policy_value);

/// Little-endian mixed-radix codecs. Coordinates are 0-based here; the
/// intervention-facing 1-based codec lives in envgen.
int encode_mixed_radix(std::span<const int> digits, std::span<const int> radices);
void decode_mixed_radix(int index, std::span<const int> radices, std::span<int> digits);

}  // namespace cmdp
