#include <cmath>
#include <vector>

#include "anwel/errors.hpp"
#include "anwel/poly.hpp"
#include "anwel/singularity.hpp"
#include "doctest.h"

using anwel::AnFamily;
using anwel::Complex;
using anwel::DeformationPoint;
using anwel::Poly;
using anwel::RealForm;
using anwel::SingKind;

namespace {

Poly real_roots_poly(std::vector<Complex> roots) { return Poly::from_roots(roots); }

}  // namespace

TEST_CASE("delta, milnor and cusp counts") {
    const int delta_expect[] = {1, 1, 2, 2, 3, 3, 4, 4, 5, 5};
    for (int n = 1; n <= 10; ++n) {
        CHECK(anwel::delta_invariant(n) == delta_expect[n - 1]);
        CHECK(anwel::milnor_number(n) == n);
        CHECK(anwel::cusp_count_ec(n) == (n % 2 == 0 ? 1 : 0));
    }
    CHECK_THROWS_AS(anwel::delta_invariant(0), anwel::BadIndices);
}

TEST_CASE("family forms and sign conventions") {
    CHECK(AnFamily(3, RealForm::H).sigma() == 1.0);
    CHECK(AnFamily(3, RealForm::E).sigma() == -1.0);
    CHECK(AnFamily(4, RealForm::Even).sigma() == 1.0);
    CHECK_THROWS_AS(AnFamily(4, RealForm::H), anwel::BadIndices);
    CHECK_THROWS_AS(AnFamily(3, RealForm::Even), anwel::BadIndices);
}

TEST_CASE("member polynomial lays out coefficients") {
    DeformationPoint p(AnFamily(2, RealForm::Even), {0.25, -1.5});
    const Poly F = anwel::member_polynomial(p);
    CHECK(F.degree() == 3);
    CHECK(std::abs(F.coeff(0) - Complex(0.25)) < 1e-15);
    CHECK(std::abs(F.coeff(1) - Complex(-1.5)) < 1e-15);
    CHECK(F.coeff(2) == Complex(0.0));
    CHECK(F.lc() == Complex(1.0));

    DeformationPoint pe(AnFamily(3, RealForm::E), {1.0, 0.0, 0.0});
    const Poly Fe = anwel::member_polynomial(pe);
    CHECK(Fe.lc() == Complex(-1.0));
    CHECK(std::abs(Fe.coeff(0) - Complex(-1.0)) < 1e-15);
}

TEST_CASE("classification of hand-built members") {
    SUBCASE("hyperbolic node") {
        // (x-1)^2 (x+2): local coefficient 3 > 0, two real branches
        const Poly F = real_roots_poly({Complex(1.0), Complex(1.0), Complex(-2.0)});
        const auto inv = anwel::classify_singularities(F);
        REQUIRE(inv.records.size() == 1);
        CHECK(inv.records[0].kind == SingKind::HyperbolicNode);
        CHECK(std::abs(inv.records[0].x_location - Complex(1.0)) < 1e-7);
        CHECK(inv.records[0].local_coefficient.real() > 0.0);
        CHECK(inv.total_delta == 1);
        CHECK(inv.s == 0);
        CHECK(anwel::welschinger_sign(inv) == 1);
    }
    SUBCASE("elliptic node") {
        // -3 (x-1)^2: y^2 = F has an isolated real point
        const Poly F = real_roots_poly({Complex(1.0), Complex(1.0)}) * Complex(-3.0);
        const auto inv = anwel::classify_singularities(F);
        REQUIRE(inv.records.size() == 1);
        CHECK(inv.records[0].kind == SingKind::EllipticNode);
        CHECK(inv.s == 1);
        CHECK(anwel::welschinger_sign(inv) == -1);
    }
    SUBCASE("conjugate node pair") {
        // (x^2+1)^2 (x+5): double roots at +-i
        const Poly F = real_roots_poly({Complex(0.0, 1.0), Complex(0.0, 1.0),
                                        Complex(0.0, -1.0), Complex(0.0, -1.0),
                                        Complex(-5.0)});
        const auto inv = anwel::classify_singularities(F);
        REQUIRE(inv.records.size() == 1);
        CHECK(inv.records[0].kind == SingKind::ConjugateNodePair);
        CHECK(inv.total_delta == 2);
        CHECK(inv.s == 0);
        CHECK(inv.ic == 0);
        CHECK(anwel::welschinger_sign(inv) == 1);
    }
    SUBCASE("real cusp") {
        // (x-2)^3 (x+1)
        const Poly F = real_roots_poly({Complex(2.0), Complex(2.0), Complex(2.0),
                                        Complex(-1.0)});
        const auto inv = anwel::classify_singularities(F);
        REQUIRE(inv.records.size() == 1);
        CHECK(inv.records[0].kind == SingKind::RealCusp);
        CHECK(inv.records[0].multiplicity == 3);
        CHECK(inv.total_delta == 1);
        CHECK(anwel::welschinger_sign(inv) == 1);
    }
    SUBCASE("conjugate cusp pair") {
        // (x^2+4)^3: triple roots at +-2i, ic = 1
        const Poly F = real_roots_poly({Complex(0.0, 2.0), Complex(0.0, 2.0),
                                        Complex(0.0, 2.0), Complex(0.0, -2.0),
                                        Complex(0.0, -2.0), Complex(0.0, -2.0)});
        const auto inv = anwel::classify_singularities(F);
        REQUIRE(inv.records.size() == 1);
        CHECK(inv.records[0].kind == SingKind::ConjugateCuspPair);
        CHECK(inv.ic == 1);
        CHECK(inv.total_delta == 2);
        CHECK(anwel::welschinger_sign(inv) == -1);
    }
    SUBCASE("degenerate quadruple point") {
        // x^4: the origin cluster is exact, so the multiplicity is certain
        const Poly F = Poly::monomial(4, Complex(1.0));
        const auto inv = anwel::classify_singularities(F);
        CHECK(inv.has_degenerate);
        CHECK_THROWS_AS(anwel::welschinger_sign(inv), anwel::DegenerateMember);
    }
}

TEST_CASE("classification rejects too-small or complex input") {
    CHECK_THROWS_AS(anwel::classify_singularities(Poly::x()), anwel::DegreeTooSmall);
    const Poly notreal({Complex(0.0, 1.0), Complex(0.0), Complex(1.0)});
    CHECK_THROWS_AS(anwel::classify_singularities(notreal), anwel::DegreeMismatch);
}

TEST_CASE("classification is invariant under x-translation") {
    // two nodes and a simple pair, then the same picture shifted by 3/2
    const std::vector<Complex> roots = {Complex(0.0),        Complex(0.0),
                                        Complex(1.0),        Complex(1.0),
                                        Complex(-2.0, 0.7),  Complex(-2.0, -0.7)};
    const Poly F = real_roots_poly(roots);
    std::vector<Complex> moved = roots;
    for (auto& r : moved) r += 1.5;
    const Poly G = real_roots_poly(moved);
    const auto iF = anwel::classify_singularities(F);
    const auto iG = anwel::classify_singularities(G);
    REQUIRE(iF.records.size() == iG.records.size());
    CHECK(iF.total_delta == iG.total_delta);
    CHECK(iF.s == iG.s);
    CHECK(iF.ic == iG.ic);
    for (size_t j = 0; j < iF.records.size(); ++j) {
        CHECK(iF.records[j].kind == iG.records[j].kind);
        CHECK(std::abs(iF.records[j].x_location + 1.5 - iG.records[j].x_location) < 1e-6);
    }
}

TEST_CASE("welschinger sign is (-1)^(s+ic), multiplicatively") {
    // (x^2+1)^3 (x-2)^2 (x+1): cusp pair at +-i, node at 2 with local
    // coefficient (4+1)^3 (2+1) > 0: s = 0, ic = 1, sign -1
    const Poly base = real_roots_poly({Complex(0.0, 1.0), Complex(0.0, 1.0),
                                       Complex(0.0, 1.0), Complex(0.0, -1.0),
                                       Complex(0.0, -1.0), Complex(0.0, -1.0),
                                       Complex(2.0), Complex(2.0), Complex(-1.0)});
    const auto pos = anwel::classify_singularities(base);
    CHECK(pos.s == 0);
    CHECK(pos.ic == 1);
    CHECK(anwel::welschinger_sign(pos) == -1);

    // the leading -1 flips the node's local coefficient: s = 1, ic = 1, sign +1
    const auto neg = anwel::classify_singularities(base * Complex(-1.0));
    CHECK(neg.s == 1);
    CHECK(neg.ic == 1);
    CHECK(anwel::welschinger_sign(neg) == 1);
}

TEST_CASE("witness classifiers agree with the direct classification") {
    SUBCASE("equigeneric witness") {
        // Q has a real root and a conjugate pair; R keeps a margin from Q
        const Poly Q = real_roots_poly({Complex(0.8), Complex(-0.3, 0.6),
                                        Complex(-0.3, -0.6)});
        const Poly R = real_roots_poly({Complex(2.5), Complex(-2.5)});
        for (double sigma : {1.0, -1.0}) {
            const auto direct =
                anwel::classify_singularities((Q * Q * R * Complex(sigma)).realified());
            const auto viaw = anwel::classify_from_eg_witness(Q, R, sigma);
            REQUIRE(direct.records.size() == viaw.records.size());
            CHECK(direct.s == viaw.s);
            CHECK(direct.ic == viaw.ic);
            CHECK(direct.total_delta == viaw.total_delta);
            for (size_t j = 0; j < direct.records.size(); ++j)
                CHECK(direct.records[j].kind == viaw.records[j].kind);
        }
    }
    SUBCASE("equiclassical witness") {
        const Poly Q = real_roots_poly({Complex(1.1), Complex(-0.9)});
        const double beta = 0.4;
        const Poly cube = real_roots_poly({Complex(-beta), Complex(-beta), Complex(-beta)});
        const auto direct = anwel::classify_singularities((Q * Q * cube).realified());
        const auto viaw = anwel::classify_from_ec_witness(Q, beta);
        REQUIRE(direct.records.size() == viaw.records.size());
        CHECK(direct.s == viaw.s);
        CHECK(direct.ic == viaw.ic);
        CHECK(direct.total_delta == viaw.total_delta);
        bool saw_cusp = false;
        for (const auto& rec : viaw.records)
            if (rec.kind == SingKind::RealCusp) saw_cusp = true;
        CHECK(saw_cusp);
    }
}
