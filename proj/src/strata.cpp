#include "anwel/strata.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anwel/errors.hpp"

namespace anwel {

namespace {

void check_eg_indices(int n, int i) {
    if (n < 1 || i < 1 || 2 * i > n + 1)
        throw BadIndices("equigeneric stratum needs 1 <= i <= (n+1)/2");
}

// Monic polynomial of degree deg whose subleading coefficients come from
// z[first .. first+deg-1], highest first.
Poly monic_from(const Vec& z, int first, int deg) {
    std::vector<Complex> c(static_cast<size_t>(deg) + 1, Complex(0.0));
    c[deg] = 1.0;
    for (int a = 1; a <= deg; ++a) c[deg - a] = z[first + a - 1];
    return Poly(std::move(c));
}

Poly low_part(const Poly& p, int below) {
    std::vector<Complex> c;
    for (int j = 0; j < below; ++j) c.push_back(p.coeff(j));
    return Poly(std::move(c));
}

Poly cusp_cube(Complex beta) {
    return Poly({beta * beta * beta, 3.0 * beta * beta, 3.0 * beta, 1.0});
}

Poly interpolated_target(const SliceTarget& t, double scale) {
    return (1.0 - scale) * t.tangent_cone() + scale * t.target_poly();
}

}  // namespace

Poly ECWitness::member() const { return Q * Q * cusp_cube(beta); }

Poly SliceTarget::tangent_cone() const {
    if (n < 1 || i < 1 || i > n) throw BadIndices("slice target needs 1 <= i <= n");
    std::vector<double> c(static_cast<size_t>(n) + 2, 0.0);
    c[n + 1] = 1.0;
    c[i] = 1.0;
    return Poly::from_real(c);
}

Poly SliceTarget::target_poly() const {
    if (n < 1 || i < 1 || i > n) throw BadIndices("slice target needs 1 <= i <= n");
    if (static_cast<int>(high.size()) != n - i)
        throw BadIndices("slice target needs one frozen coefficient per degree i..n-1");
    std::vector<double> c(static_cast<size_t>(n) + 2, 0.0);
    c[n + 1] = 1.0;
    for (int j = i; j <= n - 1; ++j) c[j] = epsilon * high[j - i];
    return Poly::from_real(c);
}

long long multiplicity_eg(int n, int i) {
    check_eg_indices(n, i);
    const int top = n + 1 - i;
    long long b = 1;
    for (int j = 1; j <= i; ++j) b = b * (top - i + j) / j;
    return b;
}

long long multiplicity_ec(int k) {
    if (k < 1) throw BadIndices("equiclassical stratum needs k >= 1");
    return k;
}

EGWitness make_eg_witness(int n, int i, const Vec& z) {
    check_eg_indices(n, i);
    const int r = n + 1 - 2 * i;
    if (static_cast<int>(z.size()) != n + 1 - i)
        throw BadIndices("witness point has wrong dimension");
    EGWitness w;
    w.n = n;
    w.i = i;
    w.Q = monic_from(z, 0, i);
    w.R = monic_from(z, i, r);
    w.P = low_part(w.Q * w.Q * w.R, i);
    return w;
}

Vec eg_point(const EGWitness& w) {
    Vec z;
    for (int a = 1; a <= w.i; ++a) z.push_back(w.Q.coeff(w.i - a));
    const int r = w.n + 1 - 2 * w.i;
    for (int b = 1; b <= r; ++b) z.push_back(w.R.coeff(r - b));
    return z;
}

ECWitness make_ec_witness(int k, const Vec& z) {
    if (k < 1) throw BadIndices("equiclassical stratum needs k >= 1");
    if (static_cast<int>(z.size()) != k) throw BadIndices("witness point has wrong dimension");
    ECWitness w;
    w.k = k;
    w.Q = monic_from(z, 0, k - 1);
    w.beta = z[k - 1];
    w.P = low_part(w.member(), k + 1);
    return w;
}

Vec ec_point(const ECWitness& w) {
    Vec z;
    for (int a = 1; a <= w.k - 1; ++a) z.push_back(w.Q.coeff(w.k - 1 - a));
    z.push_back(w.beta);
    return z;
}

Vec eg_residual(const EGWitness& w, const Poly& target) {
    const Poly d = w.Q * w.Q * w.R - target;
    Vec out;
    for (int j = w.i; j <= w.n; ++j) out.push_back(d.coeff(j));
    return out;
}

Vec eg_residual(const SliceTarget& target, const Poly& Q, const Poly& R) {
    if (Q.degree() != target.i || R.degree() != target.n + 1 - 2 * target.i)
        throw DegreeMismatch("eg_residual: Q or R has the wrong degree");
    EGWitness w;
    w.n = target.n;
    w.i = target.i;
    w.Q = Q;
    w.R = R;
    return eg_residual(w, target.target_poly());
}

Vec ec_residual(const ECWitness& w, const Poly& target) {
    const Poly d = w.member() - target;
    Vec out;
    for (int j = w.k + 1; j <= 2 * w.k + 1; ++j) out.push_back(d.coeff(j));
    return out;
}

Vec ec_residual(int k, const Poly& Q, Complex beta) {
    if (k < 1) throw BadIndices("equiclassical stratum needs k >= 1");
    if (Q.degree() != k - 1) throw DegreeMismatch("ec_residual: Q has the wrong degree");
    ECWitness w;
    w.k = k;
    w.Q = Q;
    w.beta = beta;
    SliceTarget cone{2 * k, k + 1, std::vector<double>(static_cast<size_t>(k) - 1, 0.0), 1.0};
    return ec_residual(w, cone.tangent_cone());
}

SquareSystem reduced_eg_system(int n, int i) {
    check_eg_indices(n, i);
    const int r = n + 1 - 2 * i;
    const int dim = n + 1 - i;
    SquareSystem sys;
    sys.dim = dim;
    for (int e = 0; e < dim; ++e) sys.degrees.push_back(e >= 1 && r >= 1 ? 2 : 1);

    // Coefficient e of the identity, with alpha_0 = beta_0 = 1:
    //   sum_(a+b=e) (2a+b) alpha_a beta_b = (n+1-i) [e == dim].
    auto alpha = [i](const Vec& z, int a) {
        return a == 0 ? Complex(1.0) : (a <= i ? z[a - 1] : Complex(0.0));
    };
    auto beta = [i, r](const Vec& z, int b) {
        return b == 0 ? Complex(1.0) : (b <= r ? z[i + b - 1] : Complex(0.0));
    };
    sys.evaluate = [=](const Vec& z) {
        Vec out(dim, Complex(0.0));
        for (int e = 1; e <= dim; ++e) {
            Complex g(0.0);
            for (int a = std::max(0, e - r); a <= std::min(i, e); ++a)
                g += static_cast<double>(a + e) * alpha(z, a) * beta(z, e - a);
            if (e == dim) g -= static_cast<double>(n + 1 - i);
            out[e - 1] = g;
        }
        return out;
    };
    sys.jacobian = [=](const Vec& z) {
        Mat jac(dim);
        for (int e = 1; e <= dim; ++e) {
            for (int a = 1; a <= i; ++a)
                if (e - a >= 0 && e - a <= r)
                    jac.at(e - 1, a - 1) = static_cast<double>(a + e) * beta(z, e - a);
            for (int b = 1; b <= r; ++b)
                if (e - b >= 0 && e - b <= i)
                    jac.at(e - 1, i + b - 1) = static_cast<double>(2 * e - b) * alpha(z, e - b);
        }
        return jac;
    };
    return sys;
}

SquareSystem eg_residual_system(const SliceTarget& target, double scale) {
    const int n = target.n;
    const int i = target.i;
    check_eg_indices(n, i);
    const int r = n + 1 - 2 * i;
    const int dim = n + 1 - i;
    const Poly t = interpolated_target(target, scale);

    SquareSystem sys;
    sys.dim = dim;
    for (int e = 0; e < dim; ++e) sys.degrees.push_back(std::min(e + 1, r >= 1 ? 3 : 2));
    sys.evaluate = [=](const Vec& z) {
        const Poly q = monic_from(z, 0, i);
        const Poly rr = monic_from(z, i, r);
        const Poly m = q * q * rr;
        Vec out(dim);
        for (int e = 0; e < dim; ++e) out[e] = m.coeff(n - e) - t.coeff(n - e);
        return out;
    };
    sys.jacobian = [=](const Vec& z) {
        const Poly q = monic_from(z, 0, i);
        const Poly rr = monic_from(z, i, r);
        const Poly dq = 2.0 * q * rr;
        const Poly db = q * q;
        Mat jac(dim);
        for (int e = 0; e < dim; ++e) {
            for (int a = 1; a <= i; ++a) jac.at(e, a - 1) = dq.coeff(n - e - (i - a));
            for (int b = 1; b <= r; ++b) jac.at(e, i + b - 1) = db.coeff(n - e - (r - b));
        }
        return jac;
    };
    return sys;
}

SquareSystem reduced_ec_system(int k) {
    if (k < 1) throw BadIndices("equiclassical stratum needs k >= 1");
    const int dim = k;
    SquareSystem sys;
    sys.dim = dim;
    for (int e = 0; e < dim; ++e) sys.degrees.push_back(e >= 1 ? 2 : 1);

    // Coefficient e of the identity, with alpha_0 = 1 and alpha_k absent:
    //   2e alpha_e + (2e+1) beta alpha_(e-1) = k [e == k].
    auto alpha = [k](const Vec& z, int a) {
        return a == 0 ? Complex(1.0) : (a <= k - 1 ? z[a - 1] : Complex(0.0));
    };
    sys.evaluate = [=](const Vec& z) {
        const Complex beta = z[k - 1];
        Vec out(dim);
        for (int e = 1; e <= k; ++e) {
            Complex h = 2.0 * e * alpha(z, e) + (2.0 * e + 1.0) * beta * alpha(z, e - 1);
            if (e == k) h -= static_cast<double>(k);
            out[e - 1] = h;
        }
        return out;
    };
    sys.jacobian = [=](const Vec& z) {
        const Complex beta = z[k - 1];
        Mat jac(dim);
        for (int e = 1; e <= k; ++e) {
            if (e <= k - 1) jac.at(e - 1, e - 1) = 2.0 * e;
            if (e >= 2) jac.at(e - 1, e - 2) = (2.0 * e + 1.0) * beta;
            jac.at(e - 1, k - 1) = (2.0 * e + 1.0) * alpha(z, e - 1);
        }
        return jac;
    };
    return sys;
}

SquareSystem ec_residual_system(const SliceTarget& target, double scale) {
    const int k = target.i - 1;
    if (k < 1 || target.n != 2 * k)
        throw BadIndices("equiclassical slice needs n = 2k and pinned coefficients from x^(k+1)");
    const int dim = k;
    const Poly t = interpolated_target(target, scale);

    SquareSystem sys;
    sys.dim = dim;
    for (int e = 0; e < dim; ++e) sys.degrees.push_back(std::min(e + 1, 5));
    sys.evaluate = [=](const Vec& z) {
        const Poly q = monic_from(z, 0, k - 1);
        const Poly m = q * q * cusp_cube(z[k - 1]);
        Vec out(dim);
        for (int e = 0; e < dim; ++e) out[e] = m.coeff(2 * k - e) - t.coeff(2 * k - e);
        return out;
    };
    sys.jacobian = [=](const Vec& z) {
        const Complex beta = z[k - 1];
        const Poly q = monic_from(z, 0, k - 1);
        const Poly c3 = cusp_cube(beta);
        const Poly dq = 2.0 * q * c3;
        const Poly dbeta = 3.0 * q * q * Poly({beta * beta, 2.0 * beta, 1.0});
        Mat jac(dim);
        for (int e = 0; e < dim; ++e) {
            for (int a = 1; a <= k - 1; ++a)
                jac.at(e, a - 1) = dq.coeff(2 * k - e - (k - 1 - a));
            jac.at(e, k - 1) = dbeta.coeff(2 * k - e);
        }
        return jac;
    };
    return sys;
}

double ec_reduction_constant(int k) {
    if (k < 1) throw BadIndices("equiclassical stratum needs k >= 1");
    return static_cast<double>(k);
}

std::vector<ECWitness> ec_closed_form(int k) {
    std::vector<ECWitness> out = ec_closed_form_with_constant(k, ec_reduction_constant(k));
    for (const ECWitness& w : out) {
        double worst = 0.0;
        for (Complex v : ec_residual(w.k, w.Q, w.beta)) worst = std::max(worst, std::abs(v));
        if (worst > 1e-9)
            throw NonConvergence("ec_closed_form: witness fails the residual check");
    }
    return out;
}

std::vector<ECWitness> ec_closed_form_with_constant(int k, double rhs) {
    if (k < 1) throw BadIndices("equiclassical stratum needs k >= 1");
    std::vector<double> nu(k);
    nu[0] = 1.0;
    for (int e = 1; e <= k - 1; ++e) nu[e] = -(2.0 * e + 1.0) / (2.0 * e) * nu[e - 1];
    const double bk = rhs / ((2.0 * k + 1.0) * nu[k - 1]);
    const Complex principal = std::pow(Complex(bk), 1.0 / k);

    std::vector<ECWitness> out;
    for (int m = 0; m < k; ++m) {
        const double ang = 2.0 * std::numbers::pi * m / k;
        const Complex beta = principal * Complex(std::cos(ang), std::sin(ang));
        Vec z(k);
        Complex bp(1.0);
        for (int e = 1; e <= k - 1; ++e) {
            bp *= beta;
            z[e - 1] = nu[e] * bp;
        }
        z[k - 1] = beta;
        out.push_back(make_ec_witness(k, z));
    }
    std::sort(out.begin(), out.end(), [](const ECWitness& a, const ECWitness& b) {
        if (a.beta.real() != b.beta.real()) return a.beta.real() < b.beta.real();
        return a.beta.imag() < b.beta.imag();
    });
    return out;
}

}  // namespace anwel
