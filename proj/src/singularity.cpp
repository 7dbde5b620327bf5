#include "anwel/singularity.hpp"

#include <algorithm>
#include <cmath>

namespace anwel {

const char* to_string(RealForm f) {
    switch (f) {
        case RealForm::H: return "h";
        case RealForm::E: return "e";
        case RealForm::Even: return "even";
    }
    return "?";
}

AnFamily::AnFamily(int n_, RealForm form_) : n(n_), form(form_) {
    if (n < 1) throw BadIndices("A_n needs n >= 1");
    const bool odd = (n % 2 == 1);
    if (odd && form == RealForm::Even)
        throw BadIndices("odd n has real forms h and e");
    if (!odd && form != RealForm::Even)
        throw BadIndices("even n has a single real form");
}

int delta_invariant(int n) {
    if (n < 1) throw BadIndices("A_n needs n >= 1");
    return (n + 1) / 2;
}

int milnor_number(int n) {
    if (n < 1) throw BadIndices("A_n needs n >= 1");
    return n;
}

int cusp_count_ec(int n) {
    if (n < 1) throw BadIndices("A_n needs n >= 1");
    return (n % 2 == 0) ? 1 : 0;
}

DeformationPoint::DeformationPoint(AnFamily fam, std::vector<double> coeffs)
    : family(fam), a(std::move(coeffs)) {
    if (static_cast<int>(a.size()) != family.n)
        throw DegreeMismatch("deformation point needs n coefficients");
}

Poly member_polynomial(const DeformationPoint& p) {
    std::vector<Complex> c(static_cast<size_t>(p.family.n) + 2, Complex(0.0));
    for (int j = 0; j < p.family.n; ++j) c[static_cast<size_t>(j)] = p.a[static_cast<size_t>(j)];
    c.back() = Complex(1.0);
    return Poly(std::move(c)) * Complex(static_cast<double>(p.family.sigma()));
}

const char* to_string(SingKind k) {
    switch (k) {
        case SingKind::HyperbolicNode: return "hyperbolic_node";
        case SingKind::EllipticNode: return "elliptic_node";
        case SingKind::ConjugateNodePair: return "conjugate_node_pair";
        case SingKind::RealCusp: return "real_cusp";
        case SingKind::ConjugateCuspPair: return "conjugate_cusp_pair";
        case SingKind::Degenerate: return "degenerate";
    }
    return "?";
}

namespace {

bool is_real_scalar(Complex v, double realness) {
    return std::abs(v.imag()) <= realness * (1.0 + std::abs(v.real()));
}

void sort_records(std::vector<SingularPointRecord>& recs) {
    std::sort(recs.begin(), recs.end(), [](const SingularPointRecord& a,
                                           const SingularPointRecord& b) {
        if (a.x_location.real() != b.x_location.real())
            return a.x_location.real() < b.x_location.real();
        return a.x_location.imag() < b.x_location.imag();
    });
}

void finalize(SingularityInventory& inv) {
    inv.s = inv.ic = inv.total_delta = 0;
    for (const SingularPointRecord& r : inv.records) {
        const bool pair =
            r.kind == SingKind::ConjugateNodePair || r.kind == SingKind::ConjugateCuspPair ||
            (r.kind == SingKind::Degenerate && r.x_location.imag() > 0.0);
        inv.total_delta += (r.multiplicity / 2) * (pair ? 2 : 1);
        if (r.kind == SingKind::EllipticNode) ++inv.s;
        if (r.kind == SingKind::ConjugateCuspPair) ++inv.ic;
        if (r.kind == SingKind::Degenerate) inv.has_degenerate = true;
    }
    sort_records(inv.records);
}

// Shared classification core: takes singular-point candidates with location,
// multiplicity and local coefficient already computed.
struct Candidate {
    Complex x;
    int mult;
    Complex c;
};

SingularityInventory classify_candidates(std::vector<Candidate> cand, double coeff_scale,
                                         const ClassifyLimits& lim) {
    SingularityInventory inv;
    const double cfloor = lim.coeff_floor * (1.0 + coeff_scale);
    std::vector<bool> used(cand.size(), false);
    for (size_t a = 0; a < cand.size(); ++a) {
        if (used[a]) continue;
        used[a] = true;
        SingularPointRecord rec;
        rec.x_location = cand[a].x;
        rec.multiplicity = cand[a].mult;
        rec.local_coefficient = cand[a].c;
        const bool real_pt = is_real_scalar(cand[a].x, lim.realness);
        // ambiguity band: neither decisively real nor decisively complex
        const bool ambiguous = !real_pt &&
            std::abs(cand[a].x.imag()) <= lim.separation_floor * (1.0 + std::abs(cand[a].x.real()));
        if (cand[a].mult >= 4 || ambiguous) {
            rec.kind = SingKind::Degenerate;
            inv.records.push_back(rec);
            continue;
        }
        if (real_pt) {
            rec.x_location = Complex(cand[a].x.real());
            const double cr = cand[a].c.real();
            if (std::abs(cr) <= cfloor || !is_real_scalar(cand[a].c, 1e-6)) {
                rec.kind = SingKind::Degenerate;
            } else if (cand[a].mult == 2) {
                rec.kind = cr > 0.0 ? SingKind::HyperbolicNode : SingKind::EllipticNode;
            } else {
                rec.kind = SingKind::RealCusp;
            }
            rec.local_coefficient = Complex(cr);
            inv.records.push_back(rec);
            continue;
        }
        // complex point: find the conjugate partner
        size_t partner = a;
        double best = 1e300;
        for (size_t b = 0; b < cand.size(); ++b) {
            if (used[b]) continue;
            const double dd = std::abs(cand[b].x - std::conj(cand[a].x));
            if (dd < best) { best = dd; partner = b; }
        }
        if (partner == a || best > lim.separation_floor * (1.0 + std::abs(cand[a].x)) ||
            cand[partner].mult != cand[a].mult) {
            rec.kind = SingKind::Degenerate;
            inv.records.push_back(rec);
            continue;
        }
        used[partner] = true;
        if (cand[a].x.imag() < 0.0) {
            rec.x_location = cand[partner].x;
            rec.local_coefficient = cand[partner].c;
        }
        if (std::abs(rec.local_coefficient) <= cfloor)
            rec.kind = SingKind::Degenerate;
        else
            rec.kind = cand[a].mult == 2 ? SingKind::ConjugateNodePair : SingKind::ConjugateCuspPair;
        inv.records.push_back(rec);
    }
    finalize(inv);
    return inv;
}

}  // namespace

SingularityInventory classify_singularities(const Poly& F, double tol, const ClassifyLimits& lim) {
    if (F.degree() < 2) throw DegreeTooSmall("member polynomial must have degree >= 2");
    if (!F.is_real(1e-9)) throw DegreeMismatch("member polynomial must be real");
    const Poly Fr = F.realified();
    const std::vector<RootCluster> roots = all_roots(Fr, tol);
    std::vector<Candidate> cand;
    SingularityInventory inv;
    for (const RootCluster& rc : roots) {
        if (rc.multiplicity < 2) continue;
        if (rc.radius > lim.separation_floor) {
            // over-merged cluster: too smeared to classify
            cand.push_back({rc.center, rc.multiplicity, Complex(0.0)});
            continue;
        }
        double fact = 1.0;
        for (int j = 2; j <= rc.multiplicity; ++j) fact *= static_cast<double>(j);
        const Complex c = eval(nth_derivative(Fr, rc.multiplicity), rc.center) / fact;
        cand.push_back({rc.center, rc.multiplicity, c});
    }
    return classify_candidates(std::move(cand), Fr.coeff_scale(), lim);
}

SingularityInventory classify_from_eg_witness(const Poly& Q, const Poly& R, int sigma, double tol,
                                              const ClassifyLimits& lim) {
    SingularityInventory inv;
    if (Q.degree() < 1) {  // no nodes at all
        finalize(inv);
        return inv;
    }
    const Poly Qr = Q.realified();
    const Poly Rr = R.realified();
    const Poly dQ = derivative(Qr);
    const std::vector<RootCluster> roots = all_roots(Qr, tol);
    std::vector<Candidate> cand;
    for (const RootCluster& rc : roots) {
        if (rc.multiplicity != 1) {
            cand.push_back({rc.center, 2 * rc.multiplicity, Complex(0.0)});
            continue;
        }
        const Complex qp = eval(dQ, rc.center);
        const Complex c = static_cast<double>(sigma) * qp * qp * eval(Rr, rc.center);
        cand.push_back({rc.center, 2, c});
    }
    // nodes colliding with each other or with roots of R degenerate the model;
    // the coefficient floor catches R-collisions via |R(xi)| ~ 0, the mutual
    // separation is checked here (zeroed c marks the record degenerate).
    for (size_t a = 0; a < cand.size(); ++a)
        for (size_t b = a + 1; b < cand.size(); ++b)
            if (std::abs(cand[a].x - cand[b].x) <= lim.separation_floor) {
                cand[a].c = Complex(0.0);
                cand[b].c = Complex(0.0);
            }
    const double sc = Qr.coeff_scale() * Qr.coeff_scale() * Rr.coeff_scale();
    return classify_candidates(std::move(cand), sc, lim);
}

SingularityInventory classify_from_ec_witness(const Poly& Q, double beta, double tol,
                                              const ClassifyLimits& lim) {
    const Poly Qr = Q.realified();
    std::vector<Complex> lin = {Complex(beta), Complex(1.0)};
    Poly xb(lin);
    const Poly R = xb * xb * xb;
    SingularityInventory inv = classify_from_eg_witness(Qr, R, 1, tol, lim);
    // append the cusp at -beta
    SingularPointRecord cusp;
    cusp.x_location = Complex(-beta);
    cusp.multiplicity = 3;
    const Complex qv = eval(Qr, Complex(-beta));
    cusp.local_coefficient = qv * qv;
    const double cfloor =
        lim.coeff_floor * (1.0 + Qr.coeff_scale() * Qr.coeff_scale());
    bool near_node = false;
    for (const SingularPointRecord& r : inv.records)
        if (std::abs(r.x_location - cusp.x_location) <= lim.separation_floor) near_node = true;
    cusp.kind = (std::abs(cusp.local_coefficient) <= cfloor || near_node)
                    ? SingKind::Degenerate
                    : SingKind::RealCusp;
    inv.records.push_back(cusp);
    finalize(inv);
    return inv;
}

int welschinger_sign(const SingularityInventory& inv) {
    if (inv.has_degenerate) throw DegenerateMember("member too degenerate for a sign");
    return ((inv.s + inv.ic) % 2 == 0) ? 1 : -1;
}

}  // namespace anwel
