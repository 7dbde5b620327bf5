#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "anwel/poly.hpp"

namespace anwel {

using Vec = std::vector<Complex>;

// Row-major square complex matrix for Jacobians.
struct Mat {
    int n = 0;
    std::vector<Complex> a;

    explicit Mat(int dim = 0) : n(dim), a(static_cast<size_t>(dim) * static_cast<size_t>(dim)) {}
    Complex& at(int r, int c) { return a[static_cast<size_t>(r) * static_cast<size_t>(n) + static_cast<size_t>(c)]; }
    Complex at(int r, int c) const { return a[static_cast<size_t>(r) * static_cast<size_t>(n) + static_cast<size_t>(c)]; }
};

// A square polynomial system F: C^m -> C^m given by callbacks. degrees[e] is
// the total degree of equation e (used for the total-degree start system).
struct SquareSystem {
    int dim = 0;
    std::vector<int> degrees;
    std::function<Vec(const Vec&)> evaluate;
    std::function<Mat(const Vec&)> jacobian;
    bool real_coefficients = true;
};

struct SolveOptions {
    std::uint64_t seed = 0;
    double tol = 1e-10;     // endpoint residual tolerance (scale-aware)
    int max_steps = 3000;   // per path
    Complex gamma = 0.0;    // 0 = draw from seed
    int gamma_retries = 3;  // rerun attempts when paths fail
};

// Endpoints of all tracked paths. points holds one representative per
// cluster (canonically sorted); multiplicity_clusters pairs each point with
// the number of paths that merged into it.
struct SolutionSet {
    std::vector<Vec> points;
    std::vector<double> residuals;
    std::vector<std::pair<Vec, int>> multiplicity_clusters;
    long long bezout_bound = 0;

    long long total_count() const {
        long long s = 0;
        for (const auto& [p, m] : multiplicity_clusters) s += m;
        return s;
    }
};

// Total-degree homotopy continuation: start system z_e^(d_e) = b_e, random
// gamma twist, order-4 predictor on the Davydenko field with a short Newton
// corrector and adaptive step halving. Deterministic for a fixed seed.
// Throws PathFailure when paths stall even after gamma retries.
SolutionSet solve_all(const SquareSystem& sys, const SolveOptions& opts = {});

// Newton iteration on a square system. Throws SingularJacobian / NonConvergence.
Vec newton_refine(const SquareSystem& sys, Vec x0, double tol = 1e-12, int max_iter = 50);

// A family of systems indexed by a real parameter (the slice scale).
using SystemFamily = std::function<SquareSystem(double)>;

// Track every base solution of family(0) to a solution of family(eps_path).
// The parameter dependence must be affine in the scale (true for slice
// families, whose target coefficients are linear in it). Throws PathCollision
// when two endpoints coincide.
SolutionSet warm_start_solve(const SystemFamily& family, const SolutionSet& base,
                             double eps_path, const SolveOptions& opts = {});

}  // namespace anwel
