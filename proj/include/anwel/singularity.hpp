#pragma once

#include <vector>

#include "anwel/poly.hpp"

namespace anwel {

// Real form of the curve germ y^2 = sigma * x^(n+1): for odd n the germ has
// two real forms (H with sigma=+1, E with sigma=-1); even n has a single one.
enum class RealForm { H, E, Even };

const char* to_string(RealForm f);

struct AnFamily {
    int n = 1;
    RealForm form = RealForm::H;

    AnFamily() = default;
    AnFamily(int n, RealForm form);  // throws BadIndices on invalid combinations

    int sigma() const { return form == RealForm::E ? -1 : 1; }
};

// delta(A_n) = floor((n+1)/2): the number of nodes on a generic equigeneric
// perturbation.
int delta_invariant(int n);

// Milnor number mu(A_n) = n; also the multiplicity of the discriminant.
int milnor_number(int n);

// Cusps on a generic equiclassical member: 1 for even n, 0 for odd n.
int cusp_count_ec(int n);

// A point of the deformation base: the member curve is
// y^2 = sigma * (x^(n+1) + sum_j a[j] x^j), 0 <= j <= n-1.
struct DeformationPoint {
    AnFamily family;
    std::vector<double> a;

    DeformationPoint() = default;
    DeformationPoint(AnFamily fam, std::vector<double> coeffs);
};

Poly member_polynomial(const DeformationPoint& p);

enum class SingKind {
    HyperbolicNode,
    EllipticNode,
    ConjugateNodePair,
    RealCusp,
    ConjugateCuspPair,
    Degenerate,
};

const char* to_string(SingKind k);

// One singular point of y^2 = F(x): a root of F of multiplicity >= 2.
// Conjugate pairs are recorded once, through the representative with
// positive imaginary part; local_coefficient is F^(m)(x0)/m!.
struct SingularPointRecord {
    Complex x_location;
    int multiplicity = 2;
    SingKind kind = SingKind::Degenerate;
    Complex local_coefficient;
};

struct SingularityInventory {
    std::vector<SingularPointRecord> records;
    int s = 0;            // real elliptic nodes
    int ic = 0;           // conjugate cusp pairs
    int total_delta = 0;  // sum of floor(mult/2), conjugate pairs counted twice
    bool has_degenerate = false;
};

// Knobs for deciding when a member is too degenerate to classify. The
// coefficient floor rejects singular points whose local model degenerates;
// the separation floor rejects nearly colliding singular points; realness
// marks a scalar real when |Im| <= realness * (1 + |Re|).
struct ClassifyLimits {
    double coeff_floor = 1e-7;
    double separation_floor = 1e-4;
    double realness = 1e-7;
};

// Classify all singular points of y^2 = F(x) by clustering the roots of F.
// F must be real (up to tol).
SingularityInventory classify_singularities(const Poly& F, double tol = 1e-9,
                                            const ClassifyLimits& lim = {});

// Witness-based classification for F = sigma * Q(x)^2 * R(x) with Q, R real
// and coprime: nodes sit at the roots of Q with local coefficient
// sigma * Q'(xi)^2 * R(xi). Avoids re-clustering a polynomial with built-in
// double roots.
SingularityInventory classify_from_eg_witness(const Poly& Q, const Poly& R, int sigma,
                                              double tol = 1e-9, const ClassifyLimits& lim = {});

// Same for F = Q(x)^2 * (x+beta)^3: nodes at roots of Q plus one cusp at
// -beta with local coefficient Q(-beta)^2.
SingularityInventory classify_from_ec_witness(const Poly& Q, double beta, double tol = 1e-9,
                                              const ClassifyLimits& lim = {});

// (-1)^(s + ic). Throws DegenerateMember if the inventory is degenerate.
int welschinger_sign(const SingularityInventory& inv);

}  // namespace anwel
