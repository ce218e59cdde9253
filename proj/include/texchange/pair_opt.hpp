#ifndef TEXCHANGE_PAIR_OPT_HPP
#define TEXCHANGE_PAIR_OPT_HPP

#include <optional>

#include "texchange/model.hpp"

// Two-node slot-exchange optimization: given a fixed sender-forwarder pair,
// find the integer slot split and relay budget maximizing the pair's summed
// goodput (or the proportional-fair product of gains) subject to neither node
// dropping below its initial goodput.

namespace te {

struct PairProblem {
    int k_s_in = 0;
    int k_f_in = 0;
    double pe_s0 = 0.0;
    double pe_f0 = 0.0;
    double pe_sf = 0.0;

    double r_s_in() const { return k_s_in * (1.0 - pe_s0); }
    double r_f_in() const { return k_f_in * (1.0 - pe_f0); }
    int slot_budget() const { return k_s_in + k_f_in; }

    // Orientation validity: degradedness pe_sf <= pe_s0, probabilities in
    // range, non-negative slot counts. Throws on violation.
    void validate() const;
};

struct InnerSolution {
    double r_c = 0.0;
    double r_s_te = 0.0;
    double r_f_te = 0.0;
    double sum() const { return r_s_te + r_f_te; }
};

/// Optimal relay budget for a fixed slot split under the sum objective, or
/// absent when no r_c satisfies both minimum-goodput constraints. At the
/// optimum r_c = max(0, r_s_in - k_s_te(1-pe_s0)) and the summed goodput
/// equals k_s_te(1-pe_s0) + k_f_te(1-pe_f0).
std::optional<InnerSolution> inner_solve_sum(int k_s_te, int k_f_te,
                                             const PairProblem& problem);

/// Exact integer optimum by scanning every split of the joint slot budget.
/// Keeping the initial allotment is always feasible, so gain >= 0. Equal-gain
/// ties resolve toward the split closest to the initial allotment, then the
/// smaller k_s_te.
PairAllocation solve_sum_exhaustive(const PairProblem& problem);

/// Optimal gain of the continuous relaxation (slots in R+). Upper-bounds the
/// integer optimum.
double relaxation_upper_bound(const PairProblem& problem);

struct BoundResult {
    double upper = 0.0;
    double lower = 0.0;
    std::optional<PairAllocation> lower_allocation;
    double gap() const { return upper - lower; }
};

/// Rounds the relaxed optimal split to the nearest integers (half up for
/// k_s_te), repairs slot-budget overflow by decrementing k_f_te and re-solves
/// the inner problem. Infeasible roundings fall back to keep-initial with
/// lower bound 0.
BoundResult rounding_lower_bound(const PairProblem& problem);

/// Bound-gap solver: returns the rounded allocation when upper - lower <=
/// epsilon, else the exhaustive optimum. The result's gain is always within
/// epsilon of the true integer optimum.
PairAllocation solve_sum(const PairProblem& problem, double epsilon);

/// Proportional-fair variant: maximizes (r_s_te - r_s_in)*(r_f_te - r_f_in)
/// over integer splits and continuous r_c. Cooperation requires both gains
/// strictly positive; otherwise returns keep-initial with gain 0.
PairAllocation solve_proportional_fair(const PairProblem& problem);

/// Allocation that keeps the initial slot allotment (gain 0, always feasible).
PairAllocation keep_initial_allocation(const PairProblem& problem);

}  // namespace te

#endif  // TEXCHANGE_PAIR_OPT_HPP
