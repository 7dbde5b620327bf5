#include "anwel/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "anwel/errors.hpp"
#include "anwel/rng.hpp"
#include "linalg.hpp"

namespace anwel {

namespace {

double inf_norm(const Vec& v) {
    double m = 0.0;
    for (const Complex& z : v) m = std::max(m, std::abs(z));
    return m;
}

// Solve J * x = rhs, overwriting rhs with x. Returns false on singular J.
bool solve_linear(const Mat& jac, Vec& rhs) {
    detail::LU lu = detail::lu_factor(jac.n, jac.a);
    if (lu.singular) return false;
    detail::lu_solve_inplace(lu, rhs);
    return true;
}

// A homotopy H(z, t) on t in [0, 1] given by callbacks.
struct Homotopy {
    std::function<Vec(const Vec&, double)> eval;
    std::function<Mat(const Vec&, double)> jac;
    std::function<Vec(const Vec&, double)> dt;
};

enum class PathStatus { Converged, AtInfinity, Stalled };

struct PathResult {
    PathStatus status = PathStatus::Stalled;
    Vec z;
};

constexpr double kDivergeNorm = 1e8;

// Davydenko field dz/dt = -J^-1 dH/dt at (z, t). Returns false on singular J.
bool tangent(const Homotopy& h, const Vec& z, double t, Vec& out) {
    out = h.dt(z, t);
    for (Complex& v : out) v = -v;
    return solve_linear(h.jac(z, t), out);
}

double point_dist(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

// At most max_it Newton steps on H(., t). Success means the last correction
// was small relative to |z|. The trust radius keeps the corrector from
// converging onto a different path: anything beyond it is a branch jump and
// fails the step so the step size shrinks instead.
bool correct(const Homotopy& h, Vec& z, double t, int max_it, double step_tol, double trust) {
    const Vec z0 = z;
    for (int it = 0; it < max_it; ++it) {
        Vec delta = h.eval(z, t);
        if (!solve_linear(h.jac(z, t), delta)) return false;
        for (int j = 0; j < static_cast<int>(z.size()); ++j) z[j] -= delta[j];
        if (point_dist(z, z0) > trust) return false;
        if (inf_norm(delta) <= step_tol * (1.0 + inf_norm(z))) return true;
    }
    return false;
}

// Classifies a path that cannot advance past t. Newton at t=1 separates
// finite singular endpoints from escapes to infinity: it converges only
// for the finite ones, so a failed correction with moderately large |z|
// certifies divergence even when the blowup is too slow to cross the
// hard norm threshold before the step floor. The continuity bound rejects
// corrections that teleport a far-out point onto an unrelated finite root,
// which would double-count that root's own path.
PathResult classify_stall(const Homotopy& h, Vec z, double t) {
    if (t > 0.999) {
        Vec zend = z;
        if (correct(h, zend, 1.0, 24, 1e-10, std::numeric_limits<double>::infinity()) &&
            inf_norm(zend) < 1e6 && point_dist(zend, z) <= 0.1 * (1.0 + inf_norm(z)))
            return {PathStatus::Converged, std::move(zend)};
        if (inf_norm(z) > 1e3) return {PathStatus::AtInfinity, std::move(z)};
    }
    if (t > 0.95 && inf_norm(z) > 1e5) return {PathStatus::AtInfinity, std::move(z)};
    return {PathStatus::Stalled, std::move(z)};
}

PathResult track_path(const Homotopy& h, Vec z, int max_steps) {
    const int m = static_cast<int>(z.size());
    double t = 0.0;
    double step = 0.05;
    const double step_min = 1e-9;
    const double step_max = 0.1;
    int consecutive_ok = 0;
    Vec k1(m), k2(m), k3(m), k4(m);

    for (int steps = 0; steps < max_steps; ++steps) {
        if (t >= 1.0) break;
        const double hstep = std::min(step, 1.0 - t);
        Vec znew = z;
        bool ok = tangent(h, z, t, k1);
        if (ok) {
            Vec zmid(m);
            for (int j = 0; j < m; ++j) zmid[j] = z[j] + 0.5 * hstep * k1[j];
            ok = tangent(h, zmid, t + 0.5 * hstep, k2);
            if (ok) {
                for (int j = 0; j < m; ++j) zmid[j] = z[j] + 0.5 * hstep * k2[j];
                ok = tangent(h, zmid, t + 0.5 * hstep, k3);
            }
            if (ok) {
                for (int j = 0; j < m; ++j) zmid[j] = z[j] + hstep * k3[j];
                ok = tangent(h, zmid, t + hstep, k4);
            }
            if (ok) {
                for (int j = 0; j < m; ++j)
                    znew[j] = z[j] + (hstep / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
                const double trust =
                    0.5 * hstep * inf_norm(k1) + 1e-5 * (1.0 + inf_norm(znew));
                ok = correct(h, znew, t + hstep, 3, 1e-8, trust);
            }
        }
        if (ok) {
            z = std::move(znew);
            t += hstep;
            if (inf_norm(z) > kDivergeNorm) return {PathStatus::AtInfinity, z};
            if (++consecutive_ok >= 4) {
                step = std::min(step * 1.5, step_max);
                consecutive_ok = 0;
            }
        } else {
            consecutive_ok = 0;
            step *= 0.5;
            if (step < step_min) return classify_stall(h, std::move(z), t);
        }
    }
    if (t < 1.0) return classify_stall(h, std::move(z), t);
    if (!correct(h, z, 1.0, 12, 1e-12, std::numeric_limits<double>::infinity())) {
        // keep the point; the caller's polish decides whether it is usable
    }
    return {PathStatus::Converged, z};
}

struct Endpoint {
    Vec z;
    double residual = 0.0;
};

bool lex_less(const Vec& a, const Vec& b) {
    for (size_t j = 0; j < a.size(); ++j) {
        if (a[j].real() != b[j].real()) return a[j].real() < b[j].real();
        if (a[j].imag() != b[j].imag()) return a[j].imag() < b[j].imag();
    }
    return false;
}

// Zero imaginary dust on near-real points and snap conjugate partners to
// exact conjugates so real systems report conjugation-symmetric sets.
void symmetrize(std::vector<Endpoint>& pts, const SquareSystem& sys, double band) {
    if (!sys.real_coefficients) return;
    auto conj_vec = [](const Vec& v) {
        Vec w(v.size());
        for (size_t j = 0; j < v.size(); ++j) w[j] = std::conj(v[j]);
        return w;
    };
    std::vector<bool> done(pts.size(), false);
    for (size_t a = 0; a < pts.size(); ++a) {
        if (done[a]) continue;
        const double scale = 1.0 + inf_norm(pts[a].z);
        if (point_dist(pts[a].z, conj_vec(pts[a].z)) <= band * scale) {
            for (Complex& v : pts[a].z) v = Complex(v.real(), 0.0);
            pts[a].residual = inf_norm(sys.evaluate(pts[a].z));
            done[a] = true;
            continue;
        }
        for (size_t b = a + 1; b < pts.size(); ++b) {
            if (done[b]) continue;
            if (point_dist(pts[b].z, conj_vec(pts[a].z)) <= band * scale) {
                pts[b].z = conj_vec(pts[a].z);
                pts[b].residual = pts[a].residual;
                done[a] = done[b] = true;
                break;
            }
        }
    }
}

}  // namespace

Vec newton_refine(const SquareSystem& sys, Vec x0, double tol, int max_iter) {
    for (int it = 0; it < max_iter; ++it) {
        Vec delta = sys.evaluate(x0);
        detail::LU lu = detail::lu_factor(sys.dim, sys.jacobian(x0).a);
        if (lu.singular) throw SingularJacobian("newton: singular jacobian");
        detail::lu_solve_inplace(lu, delta);
        for (int j = 0; j < sys.dim; ++j) x0[j] -= delta[j];
        if (inf_norm(delta) <= tol * (1.0 + inf_norm(x0))) return x0;
    }
    throw NonConvergence("newton: no convergence");
}

SolutionSet solve_all(const SquareSystem& sys, const SolveOptions& opts) {
    if (sys.dim <= 0 || static_cast<int>(sys.degrees.size()) != sys.dim)
        throw DegreeMismatch("solve_all: degrees must match system dimension");
    long long bezout = 1;
    for (int d : sys.degrees) {
        if (d < 1) throw DegreeMismatch("solve_all: equation degree must be positive");
        bezout *= d;
    }

    const int m = sys.dim;
    std::string last_error;
    for (int attempt = 0; attempt <= opts.gamma_retries; ++attempt) {
        CounterRng rng(opts.seed, 1000 + static_cast<std::uint64_t>(attempt));
        // Real-coefficient targets put the degenerate gamma rays on the real
        // axis, so draw the phase from a wedge bounded away from it.
        const double phase = std::numbers::pi * rng.uniform(0.15, 0.85);
        const Complex gamma = (opts.gamma != Complex(0.0) && attempt == 0)
                                  ? opts.gamma
                                  : Complex(std::cos(phase), std::sin(phase));
        std::vector<Complex> b(m);
        for (int e = 0; e < m; ++e) b[e] = rng.unit_circle();

        // Start system G_e(z) = z_e^d_e - b_e; the homotopy is
        // H = (1 - t) * gamma * G + t * F.
        auto eval_g = [&](const Vec& z) {
            Vec g(m);
            for (int e = 0; e < m; ++e) g[e] = std::pow(z[e], sys.degrees[e]) - b[e];
            return g;
        };
        Homotopy h;
        h.eval = [&, gamma](const Vec& z, double t) {
            Vec f = sys.evaluate(z);
            Vec g = eval_g(z);
            for (int e = 0; e < m; ++e) f[e] = (1.0 - t) * gamma * g[e] + t * f[e];
            return f;
        };
        h.jac = [&, gamma](const Vec& z, double t) {
            Mat j = sys.jacobian(z);
            for (auto& v : j.a) v *= t;
            for (int e = 0; e < m; ++e) {
                const double d = sys.degrees[e];
                j.at(e, e) += (1.0 - t) * gamma * d * std::pow(z[e], sys.degrees[e] - 1);
            }
            return j;
        };
        h.dt = [&, gamma](const Vec& z, double) {
            Vec f = sys.evaluate(z);
            Vec g = eval_g(z);
            for (int e = 0; e < m; ++e) f[e] -= gamma * g[e];
            return f;
        };

        // Start points: mixed-radix product of the d_e-th roots of each b_e.
        std::vector<std::vector<Complex>> roots(m);
        for (int e = 0; e < m; ++e) {
            const int d = sys.degrees[e];
            const double r = std::pow(std::abs(b[e]), 1.0 / d);
            const double phi = std::arg(b[e]) / d;
            for (int j = 0; j < d; ++j) {
                const double ang = phi + 2.0 * std::numbers::pi * j / d;
                roots[e].push_back(Complex(r * std::cos(ang), r * std::sin(ang)));
            }
        }

        bool stalled = false;
        std::vector<Endpoint> finite;
        std::vector<int> idx(m, 0);
        for (long long path = 0; path < bezout; ++path) {
            Vec z0(m);
            for (int e = 0; e < m; ++e) z0[e] = roots[e][idx[e]];
            for (int e = m - 1; e >= 0; --e) {
                if (++idx[e] < sys.degrees[e]) break;
                idx[e] = 0;
            }
            PathResult res = track_path(h, std::move(z0), opts.max_steps);
            if (res.status == PathStatus::Stalled) {
                stalled = true;
                last_error = "path stalled";
                break;
            }
            if (res.status == PathStatus::AtInfinity) continue;
            // Endpoint polish against the target system itself.
            Vec z = res.z;
            try {
                z = newton_refine(sys, z, 1e-13, 30);
            } catch (const Error&) {
                // Singular endpoints (multiple solutions) cannot pass Newton;
                // keep the tracked point as-is.
            }
            const double resid = inf_norm(sys.evaluate(z));
            double rscale = 1.0;
            for (const Complex& v : z) rscale = std::max(rscale, std::abs(v));
            if (resid > 1e-6 * std::pow(rscale, *std::max_element(sys.degrees.begin(),
                                                                  sys.degrees.end()))) {
                stalled = true;
                last_error = "endpoint residual too large";
                break;
            }
            finite.push_back({std::move(z), resid});
        }
        if (stalled) continue;

        symmetrize(finite, sys, 1e-8);

        // Cluster coincident endpoints; the cluster size is the path
        // multiplicity of that solution.
        SolutionSet out;
        out.bezout_bound = bezout;
        std::vector<bool> used(finite.size(), false);
        const double merge_tol = std::sqrt(opts.tol);
        std::vector<std::pair<Vec, int>> clusters;
        for (size_t a = 0; a < finite.size(); ++a) {
            if (used[a]) continue;
            Vec rep = finite[a].z;
            double rep_res = finite[a].residual;
            int count = 1;
            used[a] = true;
            const double scale = 1.0 + inf_norm(rep);
            for (size_t c = a + 1; c < finite.size(); ++c) {
                if (used[c]) continue;
                if (point_dist(rep, finite[c].z) <= merge_tol * scale) {
                    used[c] = true;
                    ++count;
                    if (finite[c].residual < rep_res) {
                        rep = finite[c].z;
                        rep_res = finite[c].residual;
                    }
                }
            }
            clusters.push_back({std::move(rep), count});
            out.residuals.push_back(rep_res);
        }
        std::vector<size_t> order(clusters.size());
        for (size_t j = 0; j < order.size(); ++j) order[j] = j;
        std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
            return lex_less(clusters[x].first, clusters[y].first);
        });
        SolutionSet sorted;
        sorted.bezout_bound = bezout;
        for (size_t j : order) {
            sorted.points.push_back(clusters[j].first);
            sorted.residuals.push_back(out.residuals[j]);
            sorted.multiplicity_clusters.push_back(clusters[j]);
        }
        return sorted;
    }
    throw PathFailure("solve_all: " + (last_error.empty() ? "no progress" : last_error));
}

SolutionSet warm_start_solve(const SystemFamily& family, const SolutionSet& base,
                             double eps_path, const SolveOptions& opts) {
    SquareSystem sys0 = family(0.0);
    SquareSystem sys1 = family(eps_path);
    if (sys0.dim != sys1.dim) throw DegreeMismatch("warm_start: family changed dimension");
    const int m = sys0.dim;

    std::string last_error;
    for (int attempt = 0; attempt <= opts.gamma_retries; ++attempt) {
        // The family is affine in the scale, so H(z, s) interpolates the two
        // endpoint systems exactly. Retries bow the parameter path into the
        // complex plane to step around real-codimension-one bad scales.
        Complex detour(0.0);
        if (attempt > 0) {
            CounterRng rng(opts.seed, 2000 + static_cast<std::uint64_t>(attempt));
            detour = 0.35 * rng.unit_circle();
        }
        auto s_of_t = [detour](double t) { return Complex(t, 0.0) + detour * (t * (1.0 - t)); };
        auto ds_dt = [detour](double t) { return Complex(1.0, 0.0) + detour * (1.0 - 2.0 * t); };

        Homotopy h;
        h.eval = [&](const Vec& z, double t) {
            const Complex s = s_of_t(t);
            Vec f0 = sys0.evaluate(z);
            Vec f1 = sys1.evaluate(z);
            for (int e = 0; e < m; ++e) f0[e] += s * (f1[e] - f0[e]);
            return f0;
        };
        h.jac = [&](const Vec& z, double t) {
            const Complex s = s_of_t(t);
            Mat j0 = sys0.jacobian(z);
            Mat j1 = sys1.jacobian(z);
            for (size_t q = 0; q < j0.a.size(); ++q) j0.a[q] += s * (j1.a[q] - j0.a[q]);
            return j0;
        };
        h.dt = [&](const Vec& z, double t) {
            const Complex ds = ds_dt(t);
            Vec f0 = sys0.evaluate(z);
            Vec f1 = sys1.evaluate(z);
            for (int e = 0; e < m; ++e) f0[e] = ds * (f1[e] - f0[e]);
            return f0;
        };

        bool stalled = false;
        std::vector<Endpoint> finite;
        for (const Vec& start : base.points) {
            PathResult res = track_path(h, start, opts.max_steps);
            if (res.status == PathStatus::Stalled) {
                stalled = true;
                last_error = "path stalled";
                break;
            }
            if (res.status == PathStatus::AtInfinity) {
                stalled = true;
                last_error = "path diverged";
                break;
            }
            Vec z = res.z;
            try {
                z = newton_refine(sys1, z, 1e-13, 30);
            } catch (const Error&) {
            }
            const double residual = inf_norm(sys1.evaluate(z));
            finite.push_back({std::move(z), residual});
        }
        if (stalled) continue;

        symmetrize(finite, sys1, 1e-8);

        // Warm-started paths must stay distinct: each base solution owns one
        // endpoint. A merge signals a non-generic slice.
        const double merge_tol = std::sqrt(opts.tol);
        for (size_t a = 0; a < finite.size(); ++a)
            for (size_t c = a + 1; c < finite.size(); ++c)
                if (point_dist(finite[a].z, finite[c].z) <=
                    merge_tol * (1.0 + inf_norm(finite[a].z)))
                    throw PathCollision("warm_start: two paths reached the same endpoint");

        std::vector<size_t> order(finite.size());
        for (size_t j = 0; j < order.size(); ++j) order[j] = j;
        std::sort(order.begin(), order.end(),
                  [&](size_t x, size_t y) { return lex_less(finite[x].z, finite[y].z); });
        SolutionSet out;
        out.bezout_bound = static_cast<long long>(finite.size());
        for (size_t j : order) {
            out.points.push_back(finite[j].z);
            out.residuals.push_back(finite[j].residual);
            out.multiplicity_clusters.push_back({finite[j].z, 1});
        }
        return out;
    }
    throw PathFailure("warm_start: " + (last_error.empty() ? "no progress" : last_error));
}

}  // namespace anwel
