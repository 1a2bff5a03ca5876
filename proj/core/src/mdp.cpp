#include "cmdp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cmdp {

namespace {

constexpr double kRowSumTol = 1e-9;

void check_probability_rows(std::span<const double> flat, int row_len, const char* what) {
    if (row_len <= 0) throw std::invalid_argument(std::string(what) + ": empty rows");
    for (std::size_t start = 0; start < flat.size(); start += row_len) {
        double sum = 0.0;
        for (int j = 0; j < row_len; ++j) {
            const double p = flat[start + j];
            if (!(p >= 0.0) || !std::isfinite(p))
                throw std::invalid_argument(std::string(what) + ": negative or non-finite entry");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kRowSumTol)
            throw std::invalid_argument(std::string(what) + ": row sum " + std::to_string(sum) +
                                        " deviates from 1");
    }
}

void check_index(int value, int bound, const char* what) {
    if (value < 0 || value >= bound)
        throw std::invalid_argument(std::string(what) + " index out of range");
}

}  // namespace

CausalMdp::CausalMdp(int horizon, Grid3<double> parent_probs, Grid3<double> transition_probs,
                     Grid2<double> reward)
    : num_states_(parent_probs.dim0()),
      num_actions_(parent_probs.dim1()),
      num_parent_values_(parent_probs.dim2()),
      horizon_(horizon),
      parent_probs_(std::move(parent_probs)),
      transition_probs_(std::move(transition_probs)),
      reward_(std::move(reward)) {
    if (horizon_ <= 0) throw std::invalid_argument("CausalMdp: horizon must be positive");
    if (num_states_ <= 0 || num_actions_ <= 0 || num_parent_values_ <= 0)
        throw std::invalid_argument("CausalMdp: empty state, action or parent domain");
    if (transition_probs_.dim0() != num_states_ || transition_probs_.dim1() != num_parent_values_ ||
        transition_probs_.dim2() != num_states_)
        throw std::invalid_argument("CausalMdp: transition table shape mismatch");
    if (reward_.rows() != num_states_ || reward_.cols() != num_parent_values_)
        throw std::invalid_argument("CausalMdp: reward table shape mismatch");
    check_probability_rows(parent_probs_.flat(), num_parent_values_, "CausalMdp parent probs");
    check_probability_rows(transition_probs_.flat(), num_states_, "CausalMdp transition probs");
    for (double r : reward_.flat())
        if (!std::isfinite(r) || r < 0.0)
            throw std::invalid_argument("CausalMdp: reward entries must be finite and >= 0");
}

FactoredSpec::FactoredSpec(std::vector<int> factor_sizes,
                           std::vector<std::vector<int>> transition_scopes,
                           std::vector<std::vector<int>> reward_scopes,
                           std::vector<Grid3<double>> scope_probs,
                           std::vector<Grid2<double>> scope_rewards)
    : factor_sizes_(std::move(factor_sizes)),
      transition_scopes_(std::move(transition_scopes)),
      reward_scopes_(std::move(reward_scopes)),
      scope_probs_(std::move(scope_probs)),
      scope_rewards_(std::move(scope_rewards)) {
    const int m = num_factors();
    if (m == 0) throw std::invalid_argument("FactoredSpec: no factors");
    if (static_cast<int>(transition_scopes_.size()) != m ||
        static_cast<int>(reward_scopes_.size()) != m ||
        static_cast<int>(scope_probs_.size()) != m ||
        static_cast<int>(scope_rewards_.size()) != m)
        throw std::invalid_argument("FactoredSpec: per-factor field count mismatch");

    long long total = 1;
    for (int size : factor_sizes_) {
        if (size <= 0) throw std::invalid_argument("FactoredSpec: factor sizes must be positive");
        total *= size;
        if (total > (1LL << 30)) throw std::invalid_argument("FactoredSpec: state space too large");
    }
    num_states_ = static_cast<int>(total);

    auto scope_cardinality = [&](const std::vector<int>& scope) {
        long long card = 1;
        for (int j : scope) {
            if (j < 0 || j >= m) throw std::invalid_argument("FactoredSpec: scope index out of range");
            card *= factor_sizes_[j];
        }
        return static_cast<int>(card);
    };

    const int num_z = scope_probs_[0].dim1();
    for (int i = 0; i < m; ++i) {
        const int trans_card = scope_cardinality(transition_scopes_[i]);
        const int reward_card = scope_cardinality(reward_scopes_[i]);
        if (scope_probs_[i].dim0() != trans_card || scope_probs_[i].dim1() != num_z ||
            scope_probs_[i].dim2() != factor_sizes_[i])
            throw std::invalid_argument("FactoredSpec: scope transition table shape mismatch");
        if (scope_rewards_[i].rows() != reward_card || scope_rewards_[i].cols() != num_z)
            throw std::invalid_argument("FactoredSpec: scope reward table shape mismatch");
        check_probability_rows(scope_probs_[i].flat(), factor_sizes_[i],
                               "FactoredSpec scope probs");
        for (double r : scope_rewards_[i].flat())
            if (!std::isfinite(r) || r < 0.0)
                throw std::invalid_argument("FactoredSpec: scope rewards must be finite and >= 0");
    }

    // Precompute dense projections s -> s[I_i], s -> s[J_i], s -> s_i.
    std::vector<int> digits(m);
    trans_scope_index_.assign(m, std::vector<int>(num_states_));
    reward_scope_index_.assign(m, std::vector<int>(num_states_));
    factor_value_.assign(m, std::vector<int>(num_states_));
    std::vector<int> scope_digits, scope_radices;
    for (int s = 0; s < num_states_; ++s) {
        decode_mixed_radix(s, factor_sizes_, digits);
        for (int i = 0; i < m; ++i) {
            factor_value_[i][s] = digits[i];
            for (auto [target, scopes] :
                 {std::pair{&trans_scope_index_, &transition_scopes_},
                  std::pair{&reward_scope_index_, &reward_scopes_}}) {
                const auto& scope = (*scopes)[i];
                scope_digits.clear();
                scope_radices.clear();
                for (int j : scope) {
                    scope_digits.push_back(digits[j]);
                    scope_radices.push_back(factor_sizes_[j]);
                }
                (*target)[i][s] = encode_mixed_radix(scope_digits, scope_radices);
            }
        }
    }
}

Grid3<double> FactoredSpec::expand_transition() const {
    const int S = num_states_;
    const int Z = num_parent_values();
    Grid3<double> out(S, Z, S, 1.0);
    for (int s = 0; s < S; ++s)
        for (int z = 0; z < Z; ++z)
            for (int y = 0; y < S; ++y)
                for (int i = 0; i < num_factors(); ++i)
                    out(s, z, y) *= scope_probs_[i](trans_scope_index_[i][s], z, factor_value_[i][y]);
    return out;
}

Grid2<double> FactoredSpec::expand_reward() const {
    const int S = num_states_;
    const int Z = num_parent_values();
    Grid2<double> out(S, Z, 0.0);
    for (int s = 0; s < S; ++s)
        for (int z = 0; z < Z; ++z)
            for (int i = 0; i < num_factors(); ++i)
                out(s, z) += scope_rewards_[i](reward_scope_index_[i][s], z);
    return out;
}

void validate_factorization(const CausalMdp& mdp, const FactoredSpec& spec, double tol) {
    if (spec.num_states() != mdp.num_states())
        throw std::invalid_argument("factorization: state counts differ");
    if (spec.num_parent_values() != mdp.num_parent_values())
        throw std::invalid_argument("factorization: parent domains differ");
    const Grid3<double> trans = spec.expand_transition();
    const Grid2<double> rew = spec.expand_reward();
    for (std::size_t i = 0; i < trans.flat().size(); ++i)
        if (std::abs(trans.flat()[i] - mdp.transition_probs().flat()[i]) > tol)
            throw std::invalid_argument("factorization: product rule does not reproduce transitions");
    for (std::size_t i = 0; i < rew.flat().size(); ++i)
        if (std::abs(rew.flat()[i] - mdp.reward().flat()[i]) > tol)
            throw std::invalid_argument("factorization: sum rule does not reproduce rewards");
}

void compose_transition(const CausalMdp& mdp, int state, int action, std::span<double> out) {
    check_index(state, mdp.num_states(), "state");
    check_index(action, mdp.num_actions(), "action");
    std::fill(out.begin(), out.end(), 0.0);
    const auto weights = mdp.parent_probs().row(state, action);
    for (int z = 0; z < mdp.num_parent_values(); ++z) {
        const double w = weights[z];
        if (w == 0.0) continue;
        const auto row = mdp.transition_probs().row(state, z);
        for (int y = 0; y < mdp.num_states(); ++y) out[y] += w * row[y];
    }
}

std::vector<double> compose_transition(const CausalMdp& mdp, int state, int action) {
    std::vector<double> out(mdp.num_states());
    compose_transition(mdp, state, action, out);
    return out;
}

double compose_reward(const CausalMdp& mdp, int state, int action) {
    check_index(state, mdp.num_states(), "state");
    check_index(action, mdp.num_actions(), "action");
    const auto weights = mdp.parent_probs().row(state, action);
    const auto rewards = mdp.reward().row(state);
    double out = 0.0;
    for (int z = 0; z < mdp.num_parent_values(); ++z) out += weights[z] * rewards[z];
    return out;
}

ValueTables exact_value_iteration(const CausalMdp& mdp) {
    const int S = mdp.num_states();
    const int A = mdp.num_actions();
    const int H = mdp.horizon();
    ValueTables out{Grid2<double>(H + 1, S, 0.0), Grid3<double>(H, S, A, 0.0)};
    std::vector<double> p(S);
    for (int h = H - 1; h >= 0; --h) {
        const auto next = out.value.row(h + 1);
        for (int s = 0; s < S; ++s) {
            double best = 0.0;
            for (int a = 0; a < A; ++a) {
                compose_transition(mdp, s, a, p);
                double q = compose_reward(mdp, s, a);
                for (int y = 0; y < S; ++y) q += p[y] * next[y];
                out.q_action(h, s, a) = q;
                if (a == 0 || q > best) best = q;
            }
            out.value(h, s) = best;
        }
    }
    return out;
}

ValueTables policy_value(const CausalMdp& mdp, const Policy& policy) {
    const int S = mdp.num_states();
    const int H = mdp.horizon();
    if (policy.rows() != H || policy.cols() != S)
        throw std::invalid_argument("policy_value: policy shape mismatch");
    ValueTables out{Grid2<double>(H + 1, S, 0.0), {}};
    std::vector<double> p(S);
    for (int h = H - 1; h >= 0; --h) {
        const auto next = out.value.row(h + 1);
        for (int s = 0; s < S; ++s) {
            const int a = policy(h, s);
            check_index(a, mdp.num_actions(), "policy action");
            compose_transition(mdp, s, a, p);
            double v = compose_reward(mdp, s, a);
            for (int y = 0; y < S; ++y) v += p[y] * next[y];
            out.value(h, s) = v;
        }
    }
    return out;
}

ValueTables policy_value(const CausalMdp& mdp, const MixedPolicy& policy) {
    const int S = mdp.num_states();
    const int A = mdp.num_actions();
    const int H = mdp.horizon();
    if (policy.dim0() != H || policy.dim1() != S || policy.dim2() != A)
        throw std::invalid_argument("policy_value: mixed policy shape mismatch");
    ValueTables out{Grid2<double>(H + 1, S, 0.0), {}};
    std::vector<double> p(S);
    for (int h = H - 1; h >= 0; --h) {
        const auto next = out.value.row(h + 1);
        for (int s = 0; s < S; ++s) {
            double v = 0.0;
            const auto weights = policy.row(h, s);
            for (int a = 0; a < A; ++a) {
                const double w = weights[a];
                if (w == 0.0) continue;
                compose_transition(mdp, s, a, p);
                double q = compose_reward(mdp, s, a);
                for (int y = 0; y < S; ++y) q += p[y] * next[y];
                v += w * q;
            }
            out.value(h, s) = v;
        }
    }
    return out;
}

Trajectory episode_rollout(const CausalMdp& mdp, const Policy& policy, int start_state, Rng& rng) {
    check_index(start_state, mdp.num_states(), "start state");
    if (policy.rows() != mdp.horizon() || policy.cols() != mdp.num_states())
        throw std::invalid_argument("episode_rollout: policy shape mismatch");
    Trajectory traj;
    traj.reserve(mdp.horizon());
    int s = start_state;
    for (int h = 0; h < mdp.horizon(); ++h) {
        const int a = policy(h, s);
        check_index(a, mdp.num_actions(), "policy action");
        const int z = rng.sample(mdp.parent_probs().row(s, a));
        const int y = rng.sample(mdp.transition_probs().row(s, z));
        traj.push_back({s, a, z, y, mdp.reward()(s, z)});
        s = y;
    }
    return traj;
}

double regret_increment(double optimal_value, double policy_value) {
    const double inc = optimal_value - policy_value;
    if (inc < -1e-9)
        throw std::logic_error("regret_increment: policy value exceeds the optimal value");
    return inc;
}

int encode_mixed_radix(std::span<const int> digits, std::span<const int> radices) {
    if (digits.size() != radices.size())
        throw std::invalid_argument("encode_mixed_radix: length mismatch");
    int index = 0;
    int stride = 1;
    for (std::size_t j = 0; j < digits.size(); ++j) {
        if (digits[j] < 0 || digits[j] >= radices[j])
            throw std::invalid_argument("encode_mixed_radix: digit out of range");
        index += digits[j] * stride;
        stride *= radices[j];
    }
    return index;
}

void decode_mixed_radix(int index, std::span<const int> radices, std::span<int> digits) {
    if (digits.size() != radices.size())
        throw std::invalid_argument("decode_mixed_radix: length mismatch");
    for (std::size_t j = 0; j < radices.size(); ++j) {
        digits[j] = index % radices[j];
        index /= radices[j];
    }
    if (index != 0) throw std::invalid_argument("decode_mixed_radix: index out of range");
}

}  // namespace cmdp
