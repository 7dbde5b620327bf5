#include "anwel/counts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "anwel/errors.hpp"
#include "anwel/rng.hpp"

namespace anwel {

namespace {

// Slice streams sit far above the solver's internal gamma/detour streams so
// a shared seed never reuses a draw.
constexpr std::uint64_t kSliceStreamBase = std::uint64_t(1) << 32;

// Resample attempts reserved per trial of an invariance experiment.
constexpr std::uint64_t kTrialStride = 64;

enum class Realness { Real, Ambiguous, NotReal };

// Endpoints leave the solver conjugate-symmetrized: genuinely real solutions
// carry exactly zero imaginary parts. Anything between the realness band and
// the separation floor sits too close to the real locus to call either way.
Realness triage(const Vec& z, const ClassifyLimits& lim) {
    double im = 0.0;
    double scale = 1.0;
    for (const Complex& c : z) {
        im = std::max(im, std::abs(c.imag()));
        scale = std::max(scale, std::abs(c));
    }
    if (im == 0.0) return Realness::Real;
    const double rel = im / scale;
    if (rel <= lim.realness) return Realness::Real;
    if (rel < lim.separation_floor) return Realness::Ambiguous;
    return Realness::NotReal;
}

// Base coordinates of a solved member: monic, degree n+1, and the x^n
// coefficient must have been pinned to zero by the slice equations.
std::vector<double> member_coords(const Poly& member, int n) {
    if (std::abs(member.coeff(n)) > 1e-6 * std::max(1.0, member.coeff_scale()))
        throw NonConvergence("slice endpoint left the miniversal base");
    std::vector<double> a(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(j)] = member.coeff(j).real();
    return a;
}

Vec realified_point(const Vec& z) {
    Vec out(z.size());
    for (size_t j = 0; j < z.size(); ++j) out[j] = Complex(z[j].real(), 0.0);
    return out;
}

SolveOptions solver_options(const CountOptions& opts) {
    SolveOptions s;
    s.seed = opts.seed;
    return s;
}

// Runs one sampled-count attempt per trial index until a slice survives all
// genericity gates, burning at most max_resamples retries.
template <class Fn>
CountReport with_resampling(const CountOptions& opts, std::uint64_t trial_base, Fn attempt) {
    int burned = 0;
    for (int a = 0; a <= opts.max_resamples; ++a) {
        try {
            CountReport rep = attempt(trial_base + static_cast<std::uint64_t>(a));
            rep.resamples = burned;
            return rep;
        } catch (const NonGenericSlice&) {
        } catch (const DegenerateMember&) {
        } catch (const PathCollision&) {
        } catch (const PathFailure&) {
        }
        ++burned;
    }
    throw NonGenericSlice("slice stayed degenerate after resampling");
}

long long modal_value(const std::vector<long long>& values) {
    std::map<long long, int> freq;
    for (long long v : values) ++freq[v];
    long long best = values.front();
    int best_count = 0;
    for (const auto& [v, c] : freq)
        if (c > best_count) {
            best = v;
            best_count = c;
        }
    return best;
}

}  // namespace

std::string to_string(Stratum s) {
    switch (s) {
        case Stratum::EG: return "eg";
        case Stratum::EC: return "ec";
        case Stratum::Discr: return "discr";
    }
    throw BadIndices("unknown stratum");
}

Stratum stratum_from_string(const std::string& s) {
    if (s == "eg") return Stratum::EG;
    if (s == "ec") return Stratum::EC;
    if (s == "discr") return Stratum::Discr;
    throw BadIndices("stratum must be eg, ec or discr");
}

SliceTarget sample_eg_slice(int n, int i, double epsilon, std::uint64_t seed,
                            std::uint64_t trial) {
    (void)multiplicity_eg(n, i);  // validates (n, i)
    CounterRng rng(seed, kSliceStreamBase + trial);
    SliceTarget t;
    t.n = n;
    t.i = i;
    t.epsilon = epsilon;
    t.high.resize(static_cast<size_t>(n - i));
    for (int j = i; j < n; ++j) {
        const double expo =
            static_cast<double>(n + 1 - j) / static_cast<double>(n + 1 - i) - 1.0;
        t.high[static_cast<size_t>(j - i)] = std::pow(epsilon, expo) * rng.uniform(-1.0, 1.0);
    }
    return t;
}

SliceTarget sample_ec_slice(int k, double epsilon, std::uint64_t seed, std::uint64_t trial) {
    (void)multiplicity_ec(k);  // validates k
    CounterRng rng(seed, kSliceStreamBase + trial);
    SliceTarget t;
    t.n = 2 * k;
    t.i = k + 1;
    t.epsilon = epsilon;
    t.high.resize(static_cast<size_t>(k - 1));
    for (int j = k + 1; j < 2 * k; ++j) {
        const double expo = static_cast<double>(2 * k + 1 - j) / static_cast<double>(k) - 1.0;
        t.high[static_cast<size_t>(j - k - 1)] = std::pow(epsilon, expo) * rng.uniform(-1.0, 1.0);
    }
    return t;
}

Line sample_line(int n, double epsilon, std::uint64_t seed, std::uint64_t trial) {
    if (n < 1) throw BadIndices("discriminant line needs n >= 1");
    CounterRng rng(seed, kSliceStreamBase + trial);
    Line line;
    line.base.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double expo = static_cast<double>(n + 1 - j) / static_cast<double>(n + 1);
        line.base[static_cast<size_t>(j)] = std::pow(epsilon, expo) * rng.uniform(-1.0, 1.0);
    }
    // Direction along a_0: the one direction keeping the restricted
    // discriminant at degree exactly n.
    line.direction.assign(static_cast<size_t>(n), 0.0);
    const double mag = rng.uniform(0.5, 1.5);
    line.direction[0] = rng.uniform01() < 0.5 ? -mag : mag;
    return line;
}

SliceTarget tangent_slice_eg(int n, int i) {
    (void)multiplicity_eg(n, i);
    SliceTarget t;
    t.n = n;
    t.i = i;
    t.epsilon = 1.0;
    t.high.assign(static_cast<size_t>(n - i), 0.0);
    if (n - i > 0) t.high[0] = 1.0;
    return t;
}

SliceTarget tangent_slice_ec(int k) {
    (void)multiplicity_ec(k);
    SliceTarget t;
    t.n = 2 * k;
    t.i = k + 1;
    t.epsilon = 1.0;
    t.high.assign(static_cast<size_t>(k - 1), 0.0);
    if (k - 1 > 0) t.high[0] = 1.0;
    return t;
}

Line tangent_line_discr(int n) {
    if (n < 1) throw BadIndices("discriminant line needs n >= 1");
    Line line;
    line.base.assign(static_cast<size_t>(n), 0.0);
    if (n >= 2) line.base[1] = 1.0;
    line.direction.assign(static_cast<size_t>(n), 0.0);
    line.direction[0] = 1.0;
    return line;
}

const SolutionSet& eg_base_solutions(int n, int i, std::uint64_t seed) {
    static std::map<std::tuple<int, int, std::uint64_t>, SolutionSet> cache;
    const auto key = std::tuple{n, i, seed};
    auto it = cache.find(key);
    if (it == cache.end()) {
        SolveOptions sopts;
        sopts.seed = seed;
        it = cache.emplace(key, solve_all(reduced_eg_system(n, i), sopts)).first;
    }
    return it->second;
}

const SolutionSet& ec_base_solutions(int k, std::uint64_t seed) {
    static std::map<std::tuple<int, std::uint64_t>, SolutionSet> cache;
    const auto key = std::tuple{k, seed};
    auto it = cache.find(key);
    if (it == cache.end()) {
        SolveOptions sopts;
        sopts.seed = seed;
        it = cache.emplace(key, solve_all(reduced_ec_system(k), sopts)).first;
    }
    return it->second;
}

CountReport count_eg(const AnFamily& family, int i, const SliceTarget& slice,
                     const CountOptions& opts) {
    if (family.n != slice.n || i != slice.i)
        throw BadIndices("slice does not match the requested stratum");
    const int n = family.n;

    CountReport rep;
    rep.stratum = Stratum::EG;
    rep.family = family;
    rep.i = i;
    rep.slice = slice;
    rep.seed = opts.seed;
    rep.epsilon = slice.epsilon;
    rep.expected_multiplicity = multiplicity_eg(n, i);

    const SolutionSet& base = eg_base_solutions(n, i, opts.seed);
    const SystemFamily fam_fn = [slice](double s) { return eg_residual_system(slice, s); };
    const SolutionSet sols = warm_start_solve(fam_fn, base, 1.0, solver_options(opts));
    rep.complex_count = static_cast<long long>(sols.points.size());

    for (const Vec& z : sols.points) {
        switch (triage(z, opts.limits)) {
            case Realness::Real: {
                const EGWitness w = make_eg_witness(n, i, realified_point(z));
                const Poly Q = w.Q.realified();
                const Poly R = w.R.realified();
                const SingularityInventory inv =
                    classify_from_eg_witness(Q, R, family.sigma(), opts.tol, opts.limits);
                if (inv.has_degenerate)
                    throw DegenerateMember("real slice solution is not a generic member");
                const int sign = welschinger_sign(inv);
                const Poly member = (Q * Q * R).realified();
                rep.real_solutions.push_back(
                    {DeformationPoint(family, member_coords(member, n)), inv, sign});
                rep.W += sign;
                break;
            }
            case Realness::Ambiguous:
                throw NonGenericSlice("slice solution with ambiguous realness");
            case Realness::NotReal:
                break;
        }
    }
    return rep;
}

CountReport count_ec(int k, const SliceTarget& slice, const CountOptions& opts) {
    if (slice.n != 2 * k || slice.i != k + 1)
        throw BadIndices("slice does not match the requested stratum");
    const AnFamily family(2 * k, RealForm::Even);
    const int n = 2 * k;

    CountReport rep;
    rep.stratum = Stratum::EC;
    rep.family = family;
    rep.k = k;
    rep.slice = slice;
    rep.seed = opts.seed;
    rep.epsilon = slice.epsilon;
    rep.expected_multiplicity = multiplicity_ec(k);

    const SolutionSet& base = ec_base_solutions(k, opts.seed);
    const SystemFamily fam_fn = [slice](double s) { return ec_residual_system(slice, s); };
    const SolutionSet sols = warm_start_solve(fam_fn, base, 1.0, solver_options(opts));
    rep.complex_count = static_cast<long long>(sols.points.size());

    for (const Vec& z : sols.points) {
        switch (triage(z, opts.limits)) {
            case Realness::Real: {
                const ECWitness w = make_ec_witness(k, realified_point(z));
                const Poly Q = w.Q.realified();
                const double beta = w.beta.real();
                const SingularityInventory inv =
                    classify_from_ec_witness(Q, beta, opts.tol, opts.limits);
                if (inv.has_degenerate)
                    throw DegenerateMember("real slice solution is not a generic member");
                const int sign = welschinger_sign(inv);
                const Poly member = w.member().realified();
                rep.real_solutions.push_back(
                    {DeformationPoint(family, member_coords(member, n)), inv, sign});
                rep.W += sign;
                break;
            }
            case Realness::Ambiguous:
                throw NonGenericSlice("slice solution with ambiguous realness");
            case Realness::NotReal:
                break;
        }
    }
    return rep;
}

Poly line_discriminant(const AnFamily& family, const Line& line) {
    const int n = family.n;
    if (static_cast<int>(line.base.size()) != n || static_cast<int>(line.direction.size()) != n)
        throw DegreeMismatch("line base/direction must have length n");

    bool vertical = true;
    for (int j = 1; j < n; ++j)
        if (line.direction[static_cast<size_t>(j)] != 0.0) vertical = false;

    // Sylvester rows of F are affine in tau; rows of F' join in only when the
    // direction moves a coefficient of positive degree.
    const int bound = vertical ? n : 2 * n + 1;
    const int m = bound + 1;

    std::vector<Complex> vals(static_cast<size_t>(m));
    for (int s = 0; s < m; ++s) {
        const Complex tau = std::polar(1.0, 2.0 * std::numbers::pi * s / m);
        std::vector<Complex> c(static_cast<size_t>(n) + 2, Complex(0.0));
        for (int j = 0; j < n; ++j)
            c[static_cast<size_t>(j)] = line.base[static_cast<size_t>(j)] +
                                        tau * line.direction[static_cast<size_t>(j)];
        c[static_cast<size_t>(n) + 1] = 1.0;
        vals[static_cast<size_t>(s)] = discriminant(Poly(std::move(c)));
    }

    // Inverse discrete Fourier transform on the unit circle; exact for
    // polynomials of degree <= bound.
    std::vector<Complex> co(static_cast<size_t>(m), Complex(0.0));
    for (int j = 0; j < m; ++j) {
        Complex acc = 0.0;
        for (int s = 0; s < m; ++s)
            acc += vals[static_cast<size_t>(s)] *
                   std::polar(1.0, -2.0 * std::numbers::pi * j * s / m);
        co[static_cast<size_t>(j)] = acc / static_cast<double>(m);
    }
    return Poly(std::move(co)).realified().trimmed(1e-9);
}

CountReport count_discr(const AnFamily& family, const Line& line, const CountOptions& opts) {
    const int n = family.n;
    if (static_cast<int>(line.base.size()) != n ||
        static_cast<int>(line.direction.size()) != n)
        throw BadIndices("line coordinates must have length n");
    bool moving = false;
    for (int j = 0; j < n; ++j)
        if (line.direction[static_cast<size_t>(j)] != 0.0) moving = true;
    if (!moving) throw BadIndices("line needs a nonzero direction");

    CountReport rep;
    rep.stratum = Stratum::Discr;
    rep.family = family;
    rep.line = line;
    rep.seed = opts.seed;
    rep.epsilon = opts.epsilon;
    rep.expected_multiplicity = milnor_number(n);

    // Write the restricted member as G(x) + tau*D(x); both double-point
    // equations F = F_x = 0 are affine in tau, so eliminating tau leaves the
    // exact univariate resultant D*G' - G*D'. Its roots are the double-point
    // x locations and tau = -G(x)/D(x) recovers the intersection parameter.
    // Root-finding this polynomial keeps full accuracy near the origin,
    // where interpolating the restricted discriminant loses the low
    // coefficients to round-off in the unit-circle samples.
    std::vector<Complex> bc(static_cast<size_t>(n) + 2, Complex(0.0));
    std::vector<Complex> dc(static_cast<size_t>(n), Complex(0.0));
    for (int j = 0; j < n; ++j) {
        bc[static_cast<size_t>(j)] = line.base[static_cast<size_t>(j)];
        dc[static_cast<size_t>(j)] = line.direction[static_cast<size_t>(j)];
    }
    bc[static_cast<size_t>(n) + 1] = 1.0;
    const Poly G(std::move(bc));
    const Poly D(std::move(dc));
    const Poly dp = (D * derivative(G) - G * derivative(D)).trimmed(1e-12);
    if (dp.degree() < 1) throw NonGenericSlice("line-restricted discriminant degenerated");
    rep.complex_count = dp.degree();

    for (const RootCluster& rc : all_roots(dp, opts.tol)) {
        if (rc.multiplicity != 1)
            throw NonGenericSlice("line tangent to the discriminant");
        const Complex denom = eval(D, rc.center);
        if (std::abs(denom) < opts.limits.separation_floor * (1.0 + std::abs(rc.center)))
            throw NonGenericSlice("line passes through a base point of the pencil");
        const Complex tau = -eval(G, rc.center) / denom;
        const double rel = std::abs(tau.imag()) / (1.0 + std::abs(tau));
        if (rel > opts.limits.realness) {
            if (rel < opts.limits.separation_floor)
                throw NonGenericSlice("discriminant root with ambiguous realness");
            continue;
        }
        std::vector<double> a(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            a[static_cast<size_t>(j)] = line.base[static_cast<size_t>(j)] +
                                        tau.real() * line.direction[static_cast<size_t>(j)];
        const DeformationPoint point(family, a);
        const SingularityInventory inv =
            classify_singularities(member_polynomial(point), opts.tol, opts.limits);
        if (inv.has_degenerate)
            throw DegenerateMember("singular member on the line is degenerate");
        if (inv.total_delta != 1 || inv.records.size() != 1 ||
            (inv.records[0].kind != SingKind::HyperbolicNode &&
             inv.records[0].kind != SingKind::EllipticNode))
            throw NonGenericSlice("line crossed a deeper stratum");
        const int sign = welschinger_sign(inv);
        rep.real_solutions.push_back({point, inv, sign});
        rep.W += sign;
    }
    return rep;
}

CountReport count_eg(const AnFamily& family, int i, const CountOptions& opts) {
    return with_resampling(opts, 0, [&](std::uint64_t trial) {
        const SliceTarget slice =
            sample_eg_slice(family.n, i, opts.epsilon, opts.seed, trial);
        return count_eg(family, i, slice, opts);
    });
}

CountReport count_ec(int k, const CountOptions& opts) {
    return with_resampling(opts, 0, [&](std::uint64_t trial) {
        const SliceTarget slice = sample_ec_slice(k, opts.epsilon, opts.seed, trial);
        return count_ec(k, slice, opts);
    });
}

CountReport count_discr(const AnFamily& family, const CountOptions& opts) {
    return with_resampling(opts, 0, [&](std::uint64_t trial) {
        const Line line = sample_line(family.n, opts.epsilon, opts.seed, trial);
        return count_discr(family, line, opts);
    });
}

InvarianceVerdict invariance_experiment(const AnFamily& family, Stratum stratum, int i,
                                        const InvarianceParams& params) {
    if (params.trials < 2) throw BadIndices("invariance experiment needs at least 2 trials");

    CountOptions opts;
    opts.seed = params.seed;
    opts.epsilon = params.epsilon;

    InvarianceVerdict verdict;
    verdict.stratum = stratum;
    verdict.family = family;
    if (stratum == Stratum::EG) verdict.i = i;
    if (stratum == Stratum::EC) verdict.k = family.n / 2;
    verdict.seed = params.seed;
    verdict.epsilon = params.epsilon;
    verdict.trials = params.trials;

    std::vector<CountReport> reports;
    reports.reserve(static_cast<size_t>(params.trials));
    for (int t = 0; t < params.trials; ++t) {
        const std::uint64_t trial_base = static_cast<std::uint64_t>(t) * kTrialStride;
        CountReport rep;
        switch (stratum) {
            case Stratum::EG:
                rep = with_resampling(opts, trial_base, [&](std::uint64_t trial) {
                    const SliceTarget slice =
                        sample_eg_slice(family.n, i, opts.epsilon, opts.seed, trial);
                    return count_eg(family, i, slice, opts);
                });
                break;
            case Stratum::EC: {
                if (family.n % 2 != 0)
                    throw BadIndices("equiclassical stratum needs an even n");
                const int k = family.n / 2;
                rep = with_resampling(opts, trial_base, [&](std::uint64_t trial) {
                    const SliceTarget slice =
                        sample_ec_slice(k, opts.epsilon, opts.seed, trial);
                    return count_ec(k, slice, opts);
                });
                break;
            }
            case Stratum::Discr:
                rep = with_resampling(opts, trial_base, [&](std::uint64_t trial) {
                    const Line line = sample_line(family.n, opts.epsilon, opts.seed, trial);
                    return count_discr(family, line, opts);
                });
                break;
        }
        verdict.W_values.push_back(rep.W);
        ++verdict.real_count_histogram[static_cast<long long>(rep.real_solutions.size())];
        reports.push_back(std::move(rep));
    }

    verdict.invariant =
        std::all_of(verdict.W_values.begin(), verdict.W_values.end(),
                    [&](long long w) { return w == verdict.W_values.front(); });
    if (!verdict.invariant) {
        const long long modal = modal_value(verdict.W_values);
        for (int t = 0; t < params.trials; ++t)
            if (verdict.W_values[static_cast<size_t>(t)] != modal) {
                verdict.offender_trials.push_back(t);
                verdict.offender_reports.push_back(reports[static_cast<size_t>(t)]);
            }
    }
    return verdict;
}

namespace {

std::string eg_W_formula(int n, int i, RealForm form) {
    if (i != delta_invariant(n)) return "new";
    if (n % 2 == 1) {
        const int k = (n + 1) / 2;
        if (form == RealForm::E) return k % 2 == 1 ? "-1" : "1";
        return "1";
    }
    const int k = n / 2;
    return k % 2 == 1 ? "0" : "1";
}

std::string discr_W_formula(int n, RealForm form) {
    if (n == 1) return form == RealForm::E ? "-1" : "1";
    if (n == 2) return "0";
    return "new";
}

bool row_matches(const TableRow& row) {
    if (row.mt_computed != row.mt_formula) return false;
    if (row.W_formula == "new") return true;
    return row.W_computed == std::stoll(row.W_formula);
}

}  // namespace

std::vector<TableRow> closed_form_table(int n_max, std::uint64_t seed) {
    if (n_max < 1) throw BadIndices("table needs n_max >= 1");
    CountOptions opts;
    opts.seed = seed;

    std::vector<TableRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<RealForm> forms;
        if (n % 2 == 1)
            forms = {RealForm::H, RealForm::E};
        else
            forms = {RealForm::Even};

        for (int i = 1; i <= delta_invariant(n); ++i)
            for (RealForm form : forms) {
                const CountReport rep =
                    count_eg(AnFamily(n, form), i, tangent_slice_eg(n, i), opts);
                TableRow row;
                row.n = n;
                row.form = to_string(form);
                row.stratum = "EG^" + std::to_string(i);
                row.mt_computed = rep.complex_count;
                row.mt_formula = multiplicity_eg(n, i);
                row.W_computed = rep.W;
                row.W_formula = eg_W_formula(n, i, form);
                row.matches = row_matches(row);
                rows.push_back(std::move(row));
            }

        if (n % 2 == 0) {
            const int k = n / 2;
            const CountReport rep = count_ec(k, tangent_slice_ec(k), opts);
            TableRow row;
            row.n = n;
            row.form = to_string(RealForm::Even);
            row.stratum = "EC";
            row.mt_computed = rep.complex_count;
            row.mt_formula = multiplicity_ec(k);
            row.W_computed = rep.W;
            row.W_formula = k % 2 == 1 ? "1" : "0";
            row.matches = row_matches(row);
            rows.push_back(std::move(row));
        }

        for (RealForm form : forms) {
            const CountReport rep =
                count_discr(AnFamily(n, form), tangent_line_discr(n), opts);
            TableRow row;
            row.n = n;
            row.form = to_string(form);
            row.stratum = "D";
            row.mt_computed = rep.complex_count;
            row.mt_formula = milnor_number(n);
            row.W_computed = rep.W;
            row.W_formula = discr_W_formula(n, form);
            row.matches = row_matches(row);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace anwel
