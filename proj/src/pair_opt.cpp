#include "texchange/pair_opt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace te {

namespace {

void require_probability(double pe, const char* what) {
    if (!(pe >= 0.0 && pe <= 1.0)) {
        std::ostringstream os;
        os << "pair problem: " << what << " = " << pe << " outside [0, 1]";
        throw std::invalid_argument(os.str());
    }
}

PairAllocation make_allocation(int k_s_te, int k_f_te,
                               const InnerSolution& inner,
                               const PairProblem& p) {
    PairAllocation a;
    a.k_s_te = k_s_te;
    a.k_f_te = k_f_te;
    a.r_c = inner.r_c;
    a.r_sf = k_s_te * (1.0 - p.pe_sf);
    a.r_s0 = k_s_te * (1.0 - p.pe_s0);
    a.r_s_te = inner.r_s_te;
    a.r_f_te = inner.r_f_te;
    a.gain = inner.sum() - (p.r_s_in() + p.r_f_in());
    return a;
}

// Optimal gain of the relaxed problem together with its slot split. The
// relaxed inner optimum is linear in the split, so the maximum sits at a
// breakpoint of the (interval-shaped) feasible region; evaluating every
// breakpoint candidate is exact. Verified against a dense grid in the tests.
struct RelaxedOptimum {
    double gain = 0.0;
    double k_s = 0.0;
};

RelaxedOptimum relaxed_optimum(const PairProblem& p) {
    const double budget = p.slot_budget();
    const double r_s_in = p.r_s_in();
    const double r_f_in = p.r_f_in();

    auto feasible = [&](double ks) {
        if (ks < -kFeasTol || ks > budget + kFeasTol) return false;
        ks = std::clamp(ks, 0.0, budget);
        if (ks * (1.0 - p.pe_sf) < r_s_in - kFeasTol) return false;
        const double r_c = std::max(0.0, r_s_in - ks * (1.0 - p.pe_s0));
        const double cap = (budget - ks) * (1.0 - p.pe_f0);
        return cap - r_f_in >= r_c - kFeasTol;
    };
    auto gain_at = [&](double ks) {
        return ks * (1.0 - p.pe_s0) + (budget - ks) * (1.0 - p.pe_f0) -
               r_s_in - r_f_in;
    };

    std::vector<double> candidates = {0.0, budget,
                                      static_cast<double>(p.k_s_in)};
    if (p.pe_sf < 1.0) candidates.push_back(r_s_in / (1.0 - p.pe_sf));
    if (p.pe_s0 < 1.0) candidates.push_back(r_s_in / (1.0 - p.pe_s0));
    if (p.pe_f0 < 1.0) {
        candidates.push_back(budget - r_f_in / (1.0 - p.pe_f0));
        if (p.pe_f0 != p.pe_s0) {
            candidates.push_back(
                (r_s_in + r_f_in - budget * (1.0 - p.pe_f0)) /
                (p.pe_f0 - p.pe_s0));
        }
    }

    RelaxedOptimum best{-1.0, static_cast<double>(p.k_s_in)};
    bool found = false;
    for (double c : candidates) {
        const double ks = std::clamp(c, 0.0, budget);
        if (!feasible(ks)) continue;
        const double g = gain_at(ks);
        const bool better =
            !found || g > best.gain + kFeasTol ||
            (g >= best.gain - kFeasTol &&
             std::abs(ks - p.k_s_in) < std::abs(best.k_s - p.k_s_in) - 1e-12);
        if (better) {
            best.gain = found ? std::max(g, best.gain) : g;
            best.k_s = ks;
            found = true;
        }
    }
    // Keeping the initial split is always feasible, so the relaxation never
    // reports a negative optimum.
    if (!found || best.gain < 0.0) return {0.0, static_cast<double>(p.k_s_in)};
    return best;
}

}  // namespace

void PairProblem::validate() const {
    if (k_s_in < 0 || k_f_in < 0) {
        throw std::invalid_argument("pair problem: negative slot count");
    }
    require_probability(pe_s0, "pe_s0");
    require_probability(pe_f0, "pe_f0");
    require_probability(pe_sf, "pe_sf");
    if (pe_sf > pe_s0) {
        std::ostringstream os;
        os << "pair problem: degradedness violated, pe_sf = " << pe_sf
           << " > pe_s0 = " << pe_s0;
        throw std::invalid_argument(os.str());
    }
}

std::optional<InnerSolution> inner_solve_sum(int k_s_te, int k_f_te,
                                             const PairProblem& problem) {
    if (k_s_te < 0 || k_f_te < 0) return std::nullopt;
    if (k_s_te + k_f_te > problem.slot_budget()) return std::nullopt;

    const double r_s_in = problem.r_s_in();
    const double r_f_in = problem.r_f_in();
    const double r_sf = k_s_te * (1.0 - problem.pe_sf);
    const double r_s0 = k_s_te * (1.0 - problem.pe_s0);
    const double cap = k_f_te * (1.0 - problem.pe_f0);

    if (r_sf < r_s_in - kFeasTol) return std::nullopt;
    double r_c = std::max(0.0, r_s_in - r_s0);
    if (cap - r_f_in < r_c - kFeasTol) return std::nullopt;
    r_c = std::min(r_c, cap);

    InnerSolution s;
    s.r_c = r_c;
    s.r_s_te = std::min(r_sf, r_s0 + r_c);
    s.r_f_te = cap - r_c;
    return s;
}

PairAllocation keep_initial_allocation(const PairProblem& problem) {
    problem.validate();
    auto inner = inner_solve_sum(problem.k_s_in, problem.k_f_in, problem);
    // Always feasible: both constraints hold with equality at the initial
    // split.
    if (!inner) {
        throw std::logic_error("keep-initial split reported infeasible");
    }
    return make_allocation(problem.k_s_in, problem.k_f_in, *inner, problem);
}

PairAllocation solve_sum_exhaustive(const PairProblem& problem) {
    problem.validate();
    const int budget = problem.slot_budget();

    PairAllocation best = keep_initial_allocation(problem);
    double best_gain = best.gain;
    int best_dist = 0;

    for (int k_s = 0; k_s <= budget; ++k_s) {
        const int k_f = budget - k_s;
        auto inner = inner_solve_sum(k_s, k_f, problem);
        if (!inner) continue;
        const double gain = inner->sum() - (problem.r_s_in() + problem.r_f_in());
        const int dist = std::abs(k_s - problem.k_s_in);
        const bool improves = gain > best_gain + kFeasTol;
        const bool ties = gain >= best_gain - kFeasTol;
        if (improves ||
            (ties && (dist < best_dist ||
                      (dist == best_dist && k_s < best.k_s_te)))) {
            best = make_allocation(k_s, k_f, *inner, problem);
            best_gain = std::max(best_gain, gain);
            best_dist = dist;
        }
    }
    return best;
}

double relaxation_upper_bound(const PairProblem& problem) {
    problem.validate();
    return relaxed_optimum(problem).gain;
}

BoundResult rounding_lower_bound(const PairProblem& problem) {
    problem.validate();
    const RelaxedOptimum relaxed = relaxed_optimum(problem);
    const int budget = problem.slot_budget();

    // Nearest integers, halves rounding up; overflow repaired on k_f_te.
    int k_s = static_cast<int>(std::floor(relaxed.k_s + 0.5));
    int k_f = static_cast<int>(std::floor((budget - relaxed.k_s) + 0.5));
    k_s = std::clamp(k_s, 0, budget);
    if (k_s + k_f > budget) k_f = budget - k_s;
    k_f = std::max(k_f, 0);

    BoundResult result;
    result.upper = relaxed.gain;
    if (auto inner = inner_solve_sum(k_s, k_f, problem)) {
        PairAllocation alloc = make_allocation(k_s, k_f, *inner, problem);
        result.lower = alloc.gain;
        result.lower_allocation = alloc;
    } else {
        result.lower = 0.0;
        result.lower_allocation = keep_initial_allocation(problem);
    }
    return result;
}

PairAllocation solve_sum(const PairProblem& problem, double epsilon) {
    if (epsilon < 0.0) {
        throw std::invalid_argument("solve_sum: epsilon must be >= 0");
    }
    const BoundResult bounds = rounding_lower_bound(problem);
    if (bounds.gap() <= epsilon) return *bounds.lower_allocation;
    return solve_sum_exhaustive(problem);
}

PairAllocation solve_proportional_fair(const PairProblem& problem) {
    problem.validate();
    const int budget = problem.slot_budget();
    const double r_s_in = problem.r_s_in();
    const double r_f_in = problem.r_f_in();

    bool found = false;
    double best_product = 0.0;
    int best_dist = 0;
    PairAllocation best;

    for (int k_s = 0; k_s <= budget; ++k_s) {
        const int k_f = budget - k_s;
        const double r_sf = k_s * (1.0 - problem.pe_sf);
        const double r_s0 = k_s * (1.0 - problem.pe_s0);
        const double cap = k_f * (1.0 - problem.pe_f0);

        const double lo = std::max(0.0, r_s_in - r_s0);
        const double hi = std::min(cap - r_f_in, r_sf - r_s0);
        if (hi < lo - kFeasTol) continue;

        // Product of gains is a downward parabola in r_c on [lo, hi]; its
        // vertex is the midpoint of the two roots.
        const double vertex = (cap - r_f_in - r_s0 + r_s_in) / 2.0;
        const double r_c = std::clamp(vertex, lo, std::max(hi, lo));
        const double r_s_te = std::min(r_sf, r_s0 + r_c);
        const double r_f_te = cap - r_c;
        const double gain_s = r_s_te - r_s_in;
        const double gain_f = r_f_te - r_f_in;
        if (gain_s <= kFeasTol || gain_f <= kFeasTol) continue;

        const double product = gain_s * gain_f;
        const int dist = std::abs(k_s - problem.k_s_in);
        const bool improves = product > best_product + kFeasTol;
        const bool ties = found && product >= best_product - kFeasTol;
        if (!found || improves ||
            (ties &&
             (dist < best_dist || (dist == best_dist && k_s < best.k_s_te)))) {
            InnerSolution inner{r_c, r_s_te, r_f_te};
            best = make_allocation(k_s, k_f, inner, problem);
            best_product = std::max(best_product, product);
            best_dist = dist;
            found = true;
        }
    }

    if (!found) return keep_initial_allocation(problem);
    return best;
}

}  // namespace te
