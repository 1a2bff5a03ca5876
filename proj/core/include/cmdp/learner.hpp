#pragma once

#include <span>
#include <string_view>

#include "cmdp/grid.hpp"
#include "cmdp/mdp.hpp"

namespace cmdp {

/// Optimistic value tables produced by a learner's planning step. q_parent is
/// empty for the non-causal baselines, which plan directly over (s,a).
struct QTables {
    int horizon = 0;
    Grid3<double> q_parent;  // [H][S][Z]
    Grid3<double> q_action;  // [H][S][A]
    Grid2<double> value;     // [H+1][S], row H is zero

    bool operator==(const QTables&) const = default;
};

/// Argmax over actions at (state, level); ties break to the lowest index.
int greedy_action(const QTables& tables, int state, int level);

/// The interface every learner exposes to the harness: refresh tables from
/// the data seen so far, commit to a policy for the episode, then ingest the
/// episode's trajectory. The harness contains no learner-specific branches.
class Learner {
public:
    virtual ~Learner() = default;

    virtual std::string_view name() const = 0;

    /// Recomputes value tables from cumulative counts (once per episode).
    virtual void plan() = 0;

    /// Action played at (state, level) under the current tables.
    virtual int act(int state, int level) = 0;

    /// Action distribution the learner commits to at (state, level), used for
    /// exact policy evaluation. Defaults to a point mass at act().
    virtual void policy_row(int state, int level, std::span<double> out);

    /// Ingests one episode of experience.
    virtual void observe(const Trajectory& trajectory) = 0;

    /// V_{k,1}(state) under the current tables (the optimism quantity).
    virtual double value_bound(int state) const = 0;
};

}  // namespace cmdp
