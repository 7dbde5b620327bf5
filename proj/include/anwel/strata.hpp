#pragma once

#include <vector>

#include "anwel/poly.hpp"
#include "anwel/solver.hpp"

namespace anwel {

// Decomposition F = Q^2 * R of a degree n+1 member: Q monic of degree i
// carries the double roots, R monic of degree n+1-2i the simple ones. P is
// the low-order part (degrees < i) that the slice leaves free.
struct EGWitness {
    int n = 0;
    int i = 0;
    Poly Q;
    Poly R;
    Poly P;

    Poly member() const { return Q * Q * R; }
};

// Decomposition F = Q^2 * (x + beta)^3 of a degree 2k+1 member: Q monic of
// degree k-1 carries the nodes, -beta is the cusp location. P holds the free
// coefficients (degrees <= k).
struct ECWitness {
    int k = 0;
    Poly Q;
    Complex beta = 0.0;
    Poly P;

    Poly member() const;
};

// An affine slice through the base: coefficients of x^i .. x^(n-1) are
// frozen at epsilon * high[j-i], everything below x^i stays free. The
// tangent-cone slice x^(n+1) + x^i is the special case high = e_i with
// epsilon = 1.
struct SliceTarget {
    int n = 0;
    int i = 0;
    std::vector<double> high;  // c_i .. c_(n-1), length n - i
    double epsilon = 1e-3;

    Poly tangent_cone() const;  // x^(n+1) + x^i
    Poly target_poly() const;   // x^(n+1) + sum_(j>=i) epsilon * c_j * x^j
};

// Number of branches of the equigeneric locus EG^i through the origin,
// which a generic slice of complementary dimension meets transversally.
long long multiplicity_eg(int n, int i);

// Same for the equiclassical locus of A_2k: k branches.
long long multiplicity_ec(int k);

// Variable layout for the EG systems: z = (alpha_1..alpha_i, beta_1..beta_r)
// with Q = x^i + alpha_1 x^(i-1) + ... and R = x^r + beta_1 x^(r-1) + ...,
// r = n + 1 - 2i.
EGWitness make_eg_witness(int n, int i, const Vec& z);
Vec eg_point(const EGWitness& w);

// Variable layout for the EC systems: z = (alpha_1..alpha_(k-1), beta).
ECWitness make_ec_witness(int k, const Vec& z);
Vec ec_point(const ECWitness& w);

// Coefficient mismatch between Q^2 R and the target polynomial over the
// pinned range, ascending from x^i to x^n. All entries vanish exactly when
// the witness solves the slice.
Vec eg_residual(const EGWitness& w, const Poly& target);
Vec eg_residual(const SliceTarget& target, const Poly& Q, const Poly& R);

// Same for Q^2 (x+beta)^3 over x^(k+1) .. x^(2k+1) ascending; the last entry
// compares the two leading coefficients and is identically zero. The k/Q/beta
// overload checks against the tangent cone x^(2k+1) + x^(k+1).
Vec ec_residual(const ECWitness& w, const Poly& target);
Vec ec_residual(int k, const Poly& Q, Complex beta);

// First-order system for the tangent cone x^(n+1) + x^i: eliminating the
// free low-order part compresses the coefficient match into the polynomial
// identity (n+1) Q R - 2x Q' R - x Q R' = n + 1 - i. Equation e is the
// coefficient of x^(n-i-e) of the left side minus the right.
SquareSystem reduced_eg_system(int n, int i);

// Full coefficient-match system against the interpolated target
// (1-scale) * tangent_cone + scale * target_poly. Affine in scale, so it
// warm-starts from the reduced tangent-cone solutions at scale 0.
SquareSystem eg_residual_system(const SliceTarget& target, double scale);

// Tangent-cone system for the equiclassical stratum: the identity
// (2k+1) Q (x+beta) - 2x Q' (x+beta) - 3x Q = k. Equation e is the
// coefficient of x^(k-1-e) of the left side minus the right.
SquareSystem reduced_ec_system(int k);

// Coefficient-match system for Q^2 (x+beta)^3 against an EC slice
// (target.i == k + 1, target.n == 2k). Affine in scale.
SquareSystem ec_residual_system(const SliceTarget& target, double scale);

// The constant on the right side of the reduced EC identity.
double ec_reduction_constant(int k);

// Closed-form tangent-cone witnesses: alpha_e = nu_e beta^e with
// nu_e = -(2e+1)/(2e) nu_(e-1) and beta running over the k-th roots of
// rhs / ((2k+1) nu_(k-1)). ec_closed_form uses the reduced-identity constant
// and validates every witness against ec_residual (throws NonConvergence on
// failure); the rhs overload skips validation so tests can compare
// candidate constants by residual.
std::vector<ECWitness> ec_closed_form(int k);
std::vector<ECWitness> ec_closed_form_with_constant(int k, double rhs);

}  // namespace anwel
