#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "anwel/singularity.hpp"
#include "anwel/solver.hpp"
#include "anwel/strata.hpp"

namespace anwel {

enum class Stratum { EG, EC, Discr };

std::string to_string(Stratum s);          // "eg" / "ec" / "discr"
Stratum stratum_from_string(const std::string& s);

// Real affine line tau -> base + tau * direction in the deformation base.
struct Line {
    std::vector<double> base;
    std::vector<double> direction;
};

struct CountOptions {
    std::uint64_t seed = 0;
    double epsilon = 1e-3;
    double tol = 1e-9;       // witness / classification tolerance
    int max_resamples = 12;  // degenerate-slice retries in the sampling overloads
    ClassifyLimits limits{};
};

struct RealSolutionEntry {
    DeformationPoint point;
    SingularityInventory inventory;
    int sign = 0;
};

// One signed count over one slice (or line). complex_count is the number of
// distinct slice solutions; W sums the Welschinger signs of the real ones.
struct CountReport {
    Stratum stratum = Stratum::EG;
    AnFamily family{1, RealForm::H};
    int i = 0;  // EG only, else 0
    int k = 0;  // EC only, else 0
    SliceTarget slice{};
    Line line{};  // Discr only
    std::uint64_t seed = 0;
    double epsilon = 1e-3;
    long long complex_count = 0;
    std::vector<RealSolutionEntry> real_solutions;
    long long W = 0;
    long long expected_multiplicity = 0;
    int resamples = 0;
};

struct InvarianceParams {
    int trials = 20;
    double epsilon = 1e-3;
    std::uint64_t seed = 0;
};

struct InvarianceVerdict {
    Stratum stratum = Stratum::EG;
    AnFamily family{1, RealForm::H};
    int i = 0;  // EG only, else 0
    int k = 0;  // EC only, else 0
    std::uint64_t seed = 0;
    double epsilon = 1e-3;
    int trials = 0;
    std::vector<long long> W_values;  // by trial index
    bool invariant = false;
    std::map<long long, long long> real_count_histogram;
    std::vector<int> offender_trials;          // trials whose W differs from the modal value
    std::vector<CountReport> offender_reports;
};

// Random slices at scale epsilon. Coefficients use the quasi-homogeneous
// scales of A_n (a_j ~ epsilon^((n+1-j)/(n+1-i)) * uniform[-1,1]), so the
// slice statistics do not depend on epsilon. Deterministic in (seed, trial).
SliceTarget sample_eg_slice(int n, int i, double epsilon, std::uint64_t seed,
                            std::uint64_t trial);
SliceTarget sample_ec_slice(int k, double epsilon, std::uint64_t seed, std::uint64_t trial);

// Random vertical line: weighted-random base point, direction along a_0
// (the only direction keeping the restricted discriminant at degree n).
Line sample_line(int n, double epsilon, std::uint64_t seed, std::uint64_t trial);

// Canonical tangent-cone slices (coefficient 1 at x^i, nothing else) and the
// canonical line {a_1 = 1, a_0 = tau}. Used by the closed-form table.
SliceTarget tangent_slice_eg(int n, int i);
SliceTarget tangent_slice_ec(int k);
Line tangent_line_discr(int n);

// Cached tangent-cone solution sets (the homotopy warm-start bases).
const SolutionSet& eg_base_solutions(int n, int i, std::uint64_t seed);
const SolutionSet& ec_base_solutions(int k, std::uint64_t seed);

// Fixed-slice counts. These throw NonGenericSlice / DegenerateMember /
// PathCollision when the slice is non-generic instead of resampling.
CountReport count_eg(const AnFamily& family, int i, const SliceTarget& slice,
                     const CountOptions& opts = {});
CountReport count_ec(int k, const SliceTarget& slice, const CountOptions& opts = {});
CountReport count_discr(const AnFamily& family, const Line& line,
                        const CountOptions& opts = {});

// Sampling counts: draw a slice from (seed, trial 0) and resample on
// degeneracy, reporting how many resamples were burned.
CountReport count_eg(const AnFamily& family, int i, const CountOptions& opts = {});
CountReport count_ec(int k, const CountOptions& opts = {});
CountReport count_discr(const AnFamily& family, const CountOptions& opts = {});

// Repeats the matching sampled count over independent random slices and
// checks that W comes out the same every time. i is the EG index (ignored
// for EC, whose k is family.n / 2, and for Discr).
InvarianceVerdict invariance_experiment(const AnFamily& family, Stratum stratum, int i,
                                        const InvarianceParams& params);

// Restriction of the member discriminant to a line, as a polynomial in the
// line parameter. Exposed for the root-count checks.
Poly line_discriminant(const AnFamily& family, const Line& line);

struct TableRow {
    int n = 0;
    std::string form;     // "h" / "e" / "even"
    std::string stratum;  // "EG^i" / "EC" / "D"
    long long mt_computed = 0;
    long long mt_formula = 0;
    long long W_computed = 0;
    std::string W_formula;  // decimal integer, or "new" for unproven entries
    bool matches = true;
};

// Closed-form comparison table over all strata of A_1..A_n_max, computed on
// the canonical tangent-cone slices.
std::vector<TableRow> closed_form_table(int n_max, std::uint64_t seed = 0);

}  // namespace anwel
