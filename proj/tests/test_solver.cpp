#include <cmath>
#include <complex>
#include <vector>

#include "anwel/errors.hpp"
#include "anwel/rng.hpp"
#include "anwel/solver.hpp"
#include "anwel/strata.hpp"
#include "doctest.h"
#include "linalg.hpp"

using anwel::Complex;
using anwel::Mat;
using anwel::SquareSystem;
using anwel::Vec;

namespace {

SquareSystem univariate(std::vector<Complex> roots) {
    const anwel::Poly p = anwel::Poly::from_roots(roots);
    const anwel::Poly dp = derivative(p);
    SquareSystem sys;
    sys.dim = 1;
    sys.degrees = {p.degree()};
    sys.evaluate = [p](const Vec& z) { return Vec{eval(p, z[0])}; };
    sys.jacobian = [dp](const Vec& z) {
        Mat j(1);
        j.at(0, 0) = eval(dp, z[0]);
        return j;
    };
    return sys;
}

double point_gap(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace

TEST_CASE("lu solve applies every interchange before the forward sweep") {
    // Pivoting swaps a row after its multiplier column is already populated
    // (swap at elimination step 1); interleaving the swaps with the sweep
    // couples multipliers to the wrong right-hand-side components.
    const std::vector<Complex> A = {Complex(1.0), Complex(2.0), Complex(3.0),
                                    Complex(3.0), Complex(1.0), Complex(2.0),
                                    Complex(2.0), Complex(8.0), Complex(1.0)};
    const auto lu = anwel::detail::lu_factor(3, A);
    REQUIRE(!lu.singular);
    CHECK(std::abs(anwel::detail::lu_det(lu) - Complex(53.0)) < 1e-12);
    std::vector<Complex> b = {Complex(6.0), Complex(6.0), Complex(11.0)};
    anwel::detail::lu_solve_inplace(lu, b);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(b[static_cast<size_t>(j)] - Complex(1.0)) < 1e-12);
}

TEST_CASE("lu handles random systems to working accuracy") {
    anwel::CounterRng rng(99, 0);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 5.0);
        std::vector<Complex> A(static_cast<size_t>(n) * static_cast<size_t>(n));
        for (auto& v : A) v = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        Vec x(static_cast<size_t>(n));
        for (auto& v : x) v = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        std::vector<Complex> b(static_cast<size_t>(n), Complex(0.0));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                b[static_cast<size_t>(r)] +=
                    A[static_cast<size_t>(r) * static_cast<size_t>(n) + static_cast<size_t>(c)] *
                    x[static_cast<size_t>(c)];
        const auto lu = anwel::detail::lu_factor(n, A);
        if (lu.singular) continue;
        anwel::detail::lu_solve_inplace(lu, b);
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(b[static_cast<size_t>(j)] - x[static_cast<size_t>(j)]) < 1e-8);
    }
}

TEST_CASE("solve_all finds all roots of simple systems") {
    SUBCASE("one quadratic") {
        const auto sols = anwel::solve_all(univariate({Complex(2.0), Complex(-2.0)}));
        REQUIRE(sols.points.size() == 2);
        CHECK(sols.bezout_bound == 2);
        CHECK(std::abs(sols.points[0][0] - Complex(-2.0)) < 1e-10);
        CHECK(std::abs(sols.points[1][0] - Complex(2.0)) < 1e-10);
        for (double r : sols.residuals) CHECK(r < 1e-9);
    }
    SUBCASE("decoupled pair") {
        SquareSystem sys;
        sys.dim = 2;
        sys.degrees = {2, 2};
        sys.evaluate = [](const Vec& z) {
            return Vec{z[0] * z[0] - 1.0, z[1] * z[1] - 9.0};
        };
        sys.jacobian = [](const Vec& z) {
            Mat j(2);
            j.at(0, 0) = 2.0 * z[0];
            j.at(1, 1) = 2.0 * z[1];
            return j;
        };
        const auto sols = anwel::solve_all(sys);
        REQUIRE(sols.points.size() == 4);
        for (const Vec& z : sols.points) {
            CHECK(std::abs(std::abs(z[0]) - 1.0) < 1e-9);
            CHECK(std::abs(std::abs(z[1]) - 3.0) < 1e-9);
        }
    }
}

TEST_CASE("solve_all reproduces the cube-root witness of the (4,2) stratum") {
    anwel::SolveOptions opts;
    opts.seed = 7;
    const auto sols = anwel::solve_all(anwel::reduced_eg_system(4, 2), opts);
    REQUIRE(sols.points.size() == 3);
    CHECK(sols.bezout_bound == 4);
    const double beta = std::cbrt(1.6);
    const Vec want = {Complex(-0.5 * beta), Complex(0.375 * beta * beta), Complex(beta)};
    bool seen = false;
    int real_count = 0;
    for (const Vec& z : sols.points) {
        if (point_gap(z, want) < 1e-9) seen = true;
        bool is_real = true;
        for (const Complex& c : z)
            if (std::abs(c.imag()) > 1e-9) is_real = false;
        if (is_real) ++real_count;
    }
    CHECK(seen);
    CHECK(real_count == 1);
}

TEST_CASE("solve_all is deterministic and seed-stable") {
    const SquareSystem sys = anwel::reduced_eg_system(5, 2);
    anwel::SolveOptions opts;
    opts.seed = 42;
    const auto a = anwel::solve_all(sys, opts);
    const auto b = anwel::solve_all(sys, opts);
    REQUIRE(a.points.size() == b.points.size());
    for (size_t s = 0; s < a.points.size(); ++s)
        for (size_t j = 0; j < a.points[s].size(); ++j)
            CHECK(a.points[s][j] == b.points[s][j]);

    // a different seed reorders the paths but finds the same solution set
    anwel::SolveOptions other;
    other.seed = 43;
    const auto c = anwel::solve_all(sys, other);
    REQUIRE(c.points.size() == a.points.size());
    for (const Vec& p : a.points) {
        double best = 1e300;
        for (const Vec& q : c.points) best = std::min(best, point_gap(p, q));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("explicit gamma is honored") {
    anwel::SolveOptions opts;
    opts.seed = 3;
    opts.gamma = Complex(0.6, 0.8);
    const auto sols = anwel::solve_all(univariate({Complex(1.0), Complex(-3.0), Complex(0.5)}),
                                       opts);
    CHECK(sols.points.size() == 3);
}

TEST_CASE("newton_refine polishes and reports singular starts") {
    const SquareSystem sys = univariate({Complex(2.0), Complex(-2.0)});
    const Vec refined = anwel::newton_refine(sys, {Complex(2.001, -0.0005)});
    CHECK(std::abs(refined[0] - Complex(2.0)) < 1e-12);
    CHECK_THROWS_AS(anwel::newton_refine(sys, {Complex(0.0)}), anwel::SingularJacobian);
}

TEST_CASE("warm start tracks a slice family from the tangent cone") {
    anwel::SliceTarget t;
    t.n = 4;
    t.i = 2;
    t.high = {1.0, 0.0};
    t.epsilon = 0.05;
    const anwel::SystemFamily family = [&t](double s) {
        return anwel::eg_residual_system(t, s);
    };
    anwel::SolveOptions opts;
    opts.seed = 11;
    const auto base = anwel::solve_all(anwel::reduced_eg_system(4, 2), opts);
    REQUIRE(base.points.size() == 3);
    const auto moved = anwel::warm_start_solve(family, base, 1.0, opts);
    REQUIRE(moved.points.size() == 3);
    const SquareSystem end = family(1.0);
    for (size_t s = 0; s < moved.points.size(); ++s) {
        Vec r = end.evaluate(moved.points[s]);
        double m = 0.0;
        for (const Complex& c : r) m = std::max(m, std::abs(c));
        CHECK(m < 1e-8);
        // path identity: every endpoint remains nearest to its own seed
        const double own = point_gap(moved.points[s], base.points[s]);
        for (size_t o = 0; o < base.points.size(); ++o)
            if (o != s) CHECK(own < point_gap(moved.points[s], base.points[o]));
    }

    anwel::SolutionSet dup = base;
    dup.points.push_back(dup.points.front());
    dup.residuals.push_back(dup.residuals.front());
    CHECK_THROWS_AS(anwel::warm_start_solve(family, dup, 1.0, opts), anwel::PathCollision);
}
