#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "anwel/counts.hpp"
#include "anwel/errors.hpp"
#include "anwel/poly.hpp"
#include "anwel/singularity.hpp"
#include "doctest.h"

using anwel::AnFamily;
using anwel::Complex;
using anwel::CountOptions;
using anwel::CountReport;
using anwel::Poly;
using anwel::RealForm;
using anwel::SingKind;
using anwel::Stratum;

namespace {

CountOptions seeded(std::uint64_t seed) {
    CountOptions opts;
    opts.seed = seed;
    return opts;
}

}  // namespace

TEST_CASE("pinned equigeneric count on the (4,2) stratum") {
    const CountReport rep = anwel::count_eg(AnFamily(4, RealForm::Even), 2, seeded(7));
    CHECK(rep.stratum == Stratum::EG);
    CHECK(rep.complex_count == 3);
    CHECK(rep.expected_multiplicity == 3);
    CHECK(rep.W == 1);
    CHECK(rep.resamples == 0);
    REQUIRE(rep.real_solutions.size() == 1);
    const auto& entry = rep.real_solutions[0];
    CHECK(entry.sign == 1);
    CHECK(entry.point.a.size() == 4);
    REQUIRE(entry.inventory.records.size() == 1);
    CHECK(entry.inventory.records[0].kind == SingKind::ConjugateNodePair);
    CHECK(entry.inventory.records[0].multiplicity == 2);
    CHECK(entry.inventory.total_delta == 2);
}

TEST_CASE("pinned equiclassical count for k=3") {
    const CountReport rep = anwel::count_ec(3, seeded(1));
    CHECK(rep.stratum == Stratum::EC);
    CHECK(rep.family.n == 6);
    CHECK(rep.complex_count == 3);
    CHECK(rep.W == 1);
    REQUIRE(rep.real_solutions.size() == 1);
    bool saw_cusp = false;
    for (const auto& rec : rep.real_solutions[0].inventory.records)
        if (rec.kind == SingKind::RealCusp) saw_cusp = true;
    CHECK(saw_cusp);
}

TEST_CASE("pinned discriminant count for n=2") {
    const CountReport rep = anwel::count_discr(AnFamily(2, RealForm::Even), seeded(5));
    CHECK(rep.stratum == Stratum::Discr);
    CHECK(rep.complex_count == 2);
    CHECK(rep.expected_multiplicity == 2);
    CHECK(rep.W == 0);
    CHECK(rep.real_solutions.empty());
}

TEST_CASE("count invariants: parity, bounds, multiplicity agreement") {
    const std::pair<int, int> cases[] = {{3, 1}, {4, 1}, {5, 2}, {6, 3}};
    for (auto [n, i] : cases)
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            const AnFamily fam(n, n % 2 == 1 ? RealForm::H : RealForm::Even);
            const CountReport rep = anwel::count_eg(fam, i, seeded(seed));
            CHECK(rep.complex_count == anwel::multiplicity_eg(n, i));
            const long long real_count = static_cast<long long>(rep.real_solutions.size());
            CHECK(real_count <= rep.complex_count);
            CHECK((rep.complex_count - real_count) % 2 == 0);
            CHECK(std::llabs(rep.W) <= real_count);
            CHECK((rep.W - real_count) % 2 == 0);
        }
}

TEST_CASE("complex count does not depend on the real form") {
    for (std::uint64_t seed : {4ull, 9ull}) {
        const CountReport h = anwel::count_eg(AnFamily(5, RealForm::H), 2, seeded(seed));
        const CountReport e = anwel::count_eg(AnFamily(5, RealForm::E), 2, seeded(seed));
        CHECK(h.complex_count == e.complex_count);
        CHECK(h.complex_count == anwel::multiplicity_eg(5, 2));
    }
}

TEST_CASE("signed count is stable across slice scales") {
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        CountOptions opts = seeded(3);
        opts.epsilon = eps;
        CHECK(anwel::count_eg(AnFamily(4, RealForm::Even), 2, opts).W == 1);
        CHECK(anwel::count_ec(2, opts).W == 0);
        CHECK(anwel::count_discr(AnFamily(1, RealForm::H), opts).W == 1);
        CHECK(anwel::count_discr(AnFamily(1, RealForm::E), opts).W == -1);
    }
}

TEST_CASE("the discriminant agrees with the first equigeneric stratum") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<RealForm> forms;
        if (n % 2 == 1)
            forms = {RealForm::H, RealForm::E};
        else
            forms = {RealForm::Even};
        for (RealForm form : forms) {
            const AnFamily fam(n, form);
            const CountReport d =
                anwel::count_discr(fam, anwel::tangent_line_discr(n), seeded(2));
            const CountReport g =
                anwel::count_eg(fam, 1, anwel::tangent_slice_eg(n, 1), seeded(2));
            CHECK(d.W == g.W);
            CHECK(d.complex_count == n);
            CHECK(g.complex_count == n);
        }
    }
}

TEST_CASE("restricted discriminant matches the critical-value construction") {
    // On the canonical line the member is x^(n+1) + x + tau, so the
    // discriminant vanishes exactly at tau = -(c^(n+1) + c) over the critical
    // points c of x^(n+1) + x.
    for (int n : {2, 3, 5, 8}) {
        const AnFamily fam(n, n % 2 == 1 ? RealForm::H : RealForm::Even);
        const Poly disc = anwel::line_discriminant(fam, anwel::tangent_line_discr(n));
        REQUIRE(disc.degree() == n);
        std::vector<Complex> expected;
        std::vector<Complex> crit_coeffs(static_cast<size_t>(n) + 1, Complex(0.0));
        crit_coeffs[0] = 1.0;
        crit_coeffs[static_cast<size_t>(n)] = static_cast<double>(n + 1);
        for (const auto& rc : all_roots(Poly(std::move(crit_coeffs)))) {
            const Complex c = rc.center;
            expected.push_back(-(std::pow(c, n + 1) + c));
        }
        REQUIRE(static_cast<int>(expected.size()) == n);
        for (const auto& rc : all_roots(disc)) {
            CHECK(rc.multiplicity == 1);
            double best = 1e18;
            for (const Complex& e : expected) best = std::min(best, std::abs(rc.center - e));
            CHECK(best < 1e-8);
        }
    }
}

TEST_CASE("sampled vertical lines restrict the discriminant to degree n") {
    for (int n = 1; n <= 7; ++n) {
        const anwel::Line line = anwel::sample_line(n, 0.1, 4, 0);
        REQUIRE(line.direction[0] != 0.0);
        for (size_t j = 1; j < line.direction.size(); ++j) CHECK(line.direction[j] == 0.0);
        const AnFamily fam(n, n % 2 == 1 ? RealForm::H : RealForm::Even);
        CHECK(anwel::line_discriminant(fam, line).degree() == n);
    }
}

TEST_CASE("non-vertical lines meet the discriminant in deg(D G' - G D') points") {
    // n=2: G = x^3 - 0.2 x + 0.1, D = 0.3 + x, so the count is 3, not the
    // vertical-line value 2
    anwel::Line line;
    line.base = {0.1, -0.2};
    line.direction = {0.3, 1.0};
    const CountReport rep = anwel::count_discr(AnFamily(2, RealForm::Even), line, seeded(6));
    CHECK(rep.complex_count == 3);
    const long long real_count = static_cast<long long>(rep.real_solutions.size());
    CHECK((rep.complex_count - real_count) % 2 == 0);
}

TEST_CASE("degenerate inputs are rejected") {
    anwel::Line still;
    still.base = {0.1, 0.2};
    still.direction = {0.0, 0.0};
    CHECK_THROWS_AS(anwel::count_discr(AnFamily(2, RealForm::Even), still, seeded(1)),
                    anwel::BadIndices);

    // a slice with every frozen coefficient zero deforms toward the bare
    // monomial, whose members collapse into the origin
    anwel::SliceTarget flat;
    flat.n = 4;
    flat.i = 2;
    flat.high = {0.0, 0.0};
    flat.epsilon = 1e-3;
    CHECK_THROWS_AS(anwel::count_eg(AnFamily(4, RealForm::Even), 2, flat, seeded(1)),
                    anwel::Error);
}

TEST_CASE("slice sampling is deterministic per trial") {
    const auto a = anwel::sample_eg_slice(5, 2, 1e-3, 12, 0);
    const auto b = anwel::sample_eg_slice(5, 2, 1e-3, 12, 0);
    REQUIRE(a.high.size() == b.high.size());
    for (size_t j = 0; j < a.high.size(); ++j) CHECK(a.high[j] == b.high[j]);
    const auto c = anwel::sample_eg_slice(5, 2, 1e-3, 12, 1);
    bool differs = false;
    for (size_t j = 0; j < a.high.size(); ++j)
        if (a.high[j] != c.high[j]) differs = true;
    CHECK(differs);
}

TEST_CASE("base solutions are cached per configuration") {
    const auto& a = anwel::eg_base_solutions(5, 2, 0);
    const auto& b = anwel::eg_base_solutions(5, 2, 0);
    CHECK(&a == &b);
    CHECK(static_cast<long long>(a.points.size()) == anwel::multiplicity_eg(5, 2));
    const auto& c = anwel::ec_base_solutions(3, 0);
    CHECK(static_cast<long long>(c.points.size()) == anwel::multiplicity_ec(3));
    CHECK(&c == &anwel::ec_base_solutions(3, 0));
}

TEST_CASE("pinned invariance verdict for the (6,3) stratum") {
    anwel::InvarianceParams params;
    params.trials = 25;
    params.seed = 42;
    const auto v =
        anwel::invariance_experiment(AnFamily(6, RealForm::Even), Stratum::EG, 3, params);
    CHECK(v.invariant);
    CHECK(v.offender_trials.empty());
    REQUIRE(v.W_values.size() == 25);
    for (long long w : v.W_values) CHECK(w == 0);
    REQUIRE(v.real_count_histogram.size() == 2);
    CHECK(v.real_count_histogram.at(0) == 7);
    CHECK(v.real_count_histogram.at(2) == 18);
}

TEST_CASE("invariance experiment validates inputs") {
    anwel::InvarianceParams params;
    params.trials = 1;
    CHECK_THROWS_AS(
        anwel::invariance_experiment(AnFamily(4, RealForm::Even), Stratum::EG, 2, params),
        anwel::BadIndices);
}

TEST_CASE("closed-form table matches on every row up to n=4") {
    const auto rows = anwel::closed_form_table(4, 0);
    REQUIRE(rows.size() == 17);
    for (const auto& row : rows) CHECK(row.matches);
    // spot checks against the published values
    int seen = 0;
    for (const auto& row : rows) {
        if (row.n == 1 && row.form == "h" && row.stratum == "EG^1") {
            CHECK(row.mt_computed == 1);
            CHECK(row.W_computed == 1);
            ++seen;
        }
        if (row.n == 2 && row.stratum == "EC") {
            CHECK(row.mt_computed == 1);
            CHECK(row.W_computed == 1);
            ++seen;
        }
        if (row.n == 4 && row.stratum == "EC") {
            CHECK(row.mt_computed == 2);
            CHECK(row.W_computed == 0);
            ++seen;
        }
        if (row.n == 3 && row.form == "e" && row.stratum == "EG^2") {
            CHECK(row.mt_computed == 1);
            CHECK(row.W_computed == 1);
            ++seen;
        }
        if (row.n == 4 && row.stratum == "D") {
            CHECK(row.mt_computed == 4);
            CHECK(row.W_formula == "new");
            ++seen;
        }
    }
    CHECK(seen == 5);
}

TEST_CASE("stratum names round-trip") {
    for (Stratum s : {Stratum::EG, Stratum::EC, Stratum::Discr})
        CHECK(anwel::stratum_from_string(anwel::to_string(s)) == s);
    CHECK_THROWS_AS(anwel::stratum_from_string("nope"), anwel::BadIndices);
}
