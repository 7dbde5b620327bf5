#include "anwel/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linalg.hpp"

namespace anwel {

Poly::Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { strip_exact_zeros(); }

void Poly::strip_exact_zeros() {
    while (!c_.empty() && c_.back() == Complex(0.0)) c_.pop_back();
}

Poly Poly::monomial(int deg, Complex coeff) {
    if (deg < 0) throw BadIndices("monomial degree must be >= 0");
    if (coeff == Complex(0.0)) return Poly{};
    std::vector<Complex> c(static_cast<size_t>(deg) + 1, Complex(0.0));
    c.back() = coeff;
    return Poly(std::move(c));
}

Poly Poly::from_real(std::span<const double> coeffs) {
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    return Poly(std::move(c));
}

Poly Poly::from_roots(std::span<const Complex> roots) {
    Poly p = Poly::one();
    for (const Complex& r : roots) p = p * Poly({-r, Complex(1.0)});
    return p;
}

Complex Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Complex(0.0);
    return c_[static_cast<size_t>(k)];
}

double Poly::coeff_scale() const {
    double s = 0.0;
    for (const Complex& v : c_) s = std::max(s, std::abs(v));
    return s;
}

bool Poly::is_real(double tol) const {
    const double s = coeff_scale();
    for (const Complex& v : c_)
        if (std::abs(v.imag()) > tol * (1.0 + s)) return false;
    return true;
}

std::vector<double> Poly::real_coeffs(double tol) const {
    if (!is_real(tol)) throw DegreeMismatch("polynomial is not real within tolerance");
    std::vector<double> out(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) out[k] = c_[k].real();
    return out;
}

Poly Poly::realified() const {
    std::vector<Complex> c(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) c[k] = Complex(c_[k].real());
    return Poly(std::move(c));
}

Poly Poly::conjugated() const {
    std::vector<Complex> c(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) c[k] = std::conj(c_[k]);
    return Poly(std::move(c));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (Complex(1.0) / lc());
}

Poly Poly::trimmed(double tol) const {
    const double floor = tol * coeff_scale();
    std::vector<Complex> c = c_;
    while (!c.empty() && std::abs(c.back()) <= floor) c.pop_back();
    return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex(0.0));
    for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex(0.0));
    for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
    return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, Complex(0.0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == Complex(0.0)) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
}

Poly operator*(const Poly& a, Complex s) {
    std::vector<Complex> c(a.c_.size());
    for (size_t k = 0; k < a.c_.size(); ++k) c[k] = a.c_[k] * s;
    return Poly(std::move(c));
}

Poly derivative(const Poly& p) {
    if (p.degree() < 1) return Poly{};
    std::vector<Complex> c(static_cast<size_t>(p.degree()));
    for (int k = 1; k <= p.degree(); ++k)
        c[static_cast<size_t>(k - 1)] = static_cast<double>(k) * p.coeff(k);
    return Poly(std::move(c));
}

Poly nth_derivative(const Poly& p, int m) {
    Poly q = p;
    for (int j = 0; j < m; ++j) q = derivative(q);
    return q;
}

Complex eval(const Poly& p, Complex x) {
    Complex acc(0.0);
    for (int k = p.degree(); k >= 0; --k) acc = acc * x + p.coeff(k);
    return acc;
}

Poly shifted(const Poly& p, Complex t) {
    // Ruffini-Horner Taylor shift: repeated synthetic division by (u - t).
    const int d = p.degree();
    if (d < 1 || t == Complex(0.0)) return p;
    std::vector<Complex> c(p.coeffs());
    for (int j = 0; j < d; ++j)
        for (int k = d - 1; k >= j; --k)
            c[static_cast<size_t>(k)] += t * c[static_cast<size_t>(k) + 1];
    return Poly(std::move(c));
}

namespace {

double eval_scale(const Poly& p, double absx) {
    // Magnitude scale of evaluating p at |x| = absx; used for residual tests.
    double s = 0.0, pw = 1.0;
    for (int k = 0; k <= p.degree(); ++k) {
        s += std::abs(p.coeff(k)) * pw;
        pw *= absx;
    }
    return s + 1e-300;
}

// One synchronized Aberth-Ehrlich sweep; returns the largest relative step.
double aberth_sweep(const Poly& p, const Poly& dp, std::vector<Complex>& z) {
    const size_t d = z.size();
    double worst = 0.0;
    for (size_t l = 0; l < d; ++l) {
        const Complex pv = eval(p, z[l]);
        if (pv == Complex(0.0)) continue;
        Complex dv = eval(dp, z[l]);
        if (std::abs(dv) < 1e-280) dv = Complex(1e-280);
        const Complex newton = pv / dv;
        Complex repulse(0.0);
        for (size_t j = 0; j < d; ++j) {
            if (j == l) continue;
            Complex diff = z[l] - z[j];
            if (std::abs(diff) < 1e-280) diff = Complex(1e-280);
            repulse += Complex(1.0) / diff;
        }
        Complex denom = Complex(1.0) - newton * repulse;
        if (std::abs(denom) < 1e-12) denom = Complex(1e-12);
        const Complex step = newton / denom;
        z[l] -= step;
        worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[l])));
    }
    return worst;
}

// Pair roots of a real polynomial with their conjugates and symmetrize, so
// real roots come out with exactly zero imaginary part.
void conjugate_symmetrize(std::vector<Complex>& z, double band) {
    std::vector<bool> used(z.size(), false);
    for (size_t a = 0; a < z.size(); ++a) {
        if (used[a]) continue;
        if (std::abs(z[a].imag()) <= band * (1.0 + std::abs(z[a].real()))) {
            z[a] = Complex(z[a].real());
            used[a] = true;
            continue;
        }
        size_t best = a;
        double bestd = 1e300;
        for (size_t b = 0; b < z.size(); ++b) {
            if (used[b] || b == a) continue;
            const double dd = std::abs(z[b] - std::conj(z[a]));
            if (dd < bestd) { bestd = dd; best = b; }
        }
        if (best != a && bestd <= 1e-3 * (1.0 + std::abs(z[a]))) {
            const Complex rep = 0.5 * (z[a] + std::conj(z[best]));
            z[a] = rep;
            z[best] = std::conj(rep);
            used[a] = used[best] = true;
        } else {
            used[a] = true;  // leave unpaired; caller's tolerances decide
        }
    }
}

}  // namespace

std::vector<RootCluster> all_roots(const Poly& input, double tol) {
    if (input.degree() < 1) throw BadIndices("all_roots needs degree >= 1");
    const Poly p = input.monic();

    // Exact zero low coefficients pin a root cluster at the origin, where the
    // circle iteration cannot separate it; deflate that factor up front.
    int zero_mult = 0;
    while (zero_mult < p.degree() && p.coeff(zero_mult) == Complex(0.0)) ++zero_mult;
    if (zero_mult > 0) {
        std::vector<Complex> q;
        for (int j = zero_mult; j <= p.degree(); ++j) q.push_back(p.coeff(j));
        RootCluster origin;
        origin.center = Complex(0.0);
        origin.multiplicity = zero_mult;
        origin.radius = 0.0;
        std::vector<RootCluster> out;
        if (static_cast<int>(q.size()) > 1) out = all_roots(Poly(std::move(q)), tol);
        out.push_back(origin);
        std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
            if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
            return a.center.imag() < b.center.imag();
        });
        return out;
    }

    const Poly dp = derivative(p);
    const int d = p.degree();
    const bool real_input = input.is_real(1e-14);

    std::vector<Complex> z(static_cast<size_t>(d));
    if (d == 1) {
        z[0] = -p.coeff(0);
    } else {
        double radius = 0.0;
        for (int k = 0; k < d; ++k) radius = std::max(radius, std::abs(p.coeff(k)));
        radius = 1.0 + radius;  // Cauchy bound
        for (int l = 0; l < d; ++l) {
            const double theta =
                6.283185307179586 * (static_cast<double>(l) + 0.5) / static_cast<double>(d) + 0.43;
            z[static_cast<size_t>(l)] =
                0.7 * radius * Complex(std::cos(theta), std::sin(theta));
        }
        double prev = 1e300;
        for (int sweep = 0; sweep < 600; ++sweep) {
            const double moved = aberth_sweep(p, dp, z);
            if (moved < 1e-14) break;
            // multiple roots stall around sqrt(eps); stop once progress dies
            if (sweep > 60 && moved > 0.5 * prev && moved < 1e-6) break;
            prev = moved;
        }
        // Newton polish (helps simple roots; harmless near multiples)
        for (Complex& r : z) {
            for (int it = 0; it < 8; ++it) {
                const Complex pv = eval(p, r);
                const Complex dv = eval(dp, r);
                if (std::abs(dv) < 1e-280) break;
                const Complex step = pv / dv;
                if (std::abs(step) > 0.5 * (1.0 + std::abs(r))) break;
                r -= step;
                if (std::abs(step) <= 1e-16 * (1.0 + std::abs(r))) break;
            }
        }
    }

    if (real_input) conjugate_symmetrize(z, 1e-10);

    // residual check; multiple roots legitimately sit at ~eps^(1/m) accuracy,
    // so the acceptance bound uses the m-th root of the tolerance via cluster
    // merging below. Here only catastrophic failures are rejected.
    for (const Complex& r : z) {
        const double res = std::abs(eval(p, r));
        if (res > 1e-5 * eval_scale(p, std::abs(r)))
            throw NonConvergence("root iteration did not converge");
    }

    // Cluster: merge approximations closer than kappa * tol^(1/m) where m is
    // the size the merged cluster would have.
    struct Group {
        std::vector<size_t> members;
        Complex center(const std::vector<Complex>& zz) const {
            Complex s(0.0);
            for (size_t m : members) s += zz[m];
            return s / static_cast<double>(members.size());
        }
    };
    std::vector<Group> groups;
    for (size_t l = 0; l < z.size(); ++l) groups.push_back(Group{{l}});
    double zmax = 0.0;
    for (const Complex& r : z) zmax = std::max(zmax, std::abs(r));
    const double scale = 1.0 + zmax;
    const double kappa = 2.0;
    while (groups.size() >= 2) {
        double bestd = 1e300;
        size_t ba = 0, bb = 0;
        for (size_t a = 0; a < groups.size(); ++a)
            for (size_t b = a + 1; b < groups.size(); ++b) {
                const double dd = std::abs(groups[a].center(z) - groups[b].center(z));
                if (dd < bestd) { bestd = dd; ba = a; bb = b; }
            }
        const size_t m = groups[ba].members.size() + groups[bb].members.size();
        const double thresh = kappa * std::pow(tol, 1.0 / static_cast<double>(m)) * scale;
        if (bestd > thresh) break;
        groups[ba].members.insert(groups[ba].members.end(), groups[bb].members.begin(),
                                  groups[bb].members.end());
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(bb));
    }

    std::vector<RootCluster> out;
    for (const Group& g : groups) {
        RootCluster c;
        c.center = g.center(z);
        c.multiplicity = static_cast<int>(g.members.size());
        double rad = 0.0;
        for (size_t m : g.members) rad = std::max(rad, std::abs(z[m] - c.center));
        c.radius = rad;
        out.push_back(c);
    }
    if (real_input)
        for (RootCluster& c : out)
            if (std::abs(c.center.imag()) <= 1e-10 * (1.0 + std::abs(c.center.real())))
                c.center = Complex(c.center.real());
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        return a.center.imag() < b.center.imag();
    });
    return out;
}

Complex resultant(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return Complex(0.0);
    const int dp = p.degree(), dq = q.degree();
    if (dp == 0) return std::pow(p.coeff(0), static_cast<double>(dq));
    if (dq == 0) return std::pow(q.coeff(0), static_cast<double>(dp));
    const int n = dp + dq;
    std::vector<Complex> m(static_cast<size_t>(n) * static_cast<size_t>(n), Complex(0.0));
    for (int r = 0; r < dq; ++r)
        for (int k = 0; k <= dp; ++k)
            m[static_cast<size_t>(r) * static_cast<size_t>(n) + static_cast<size_t>(r + k)] =
                p.coeff(dp - k);
    for (int r = 0; r < dp; ++r)
        for (int k = 0; k <= dq; ++k)
            m[static_cast<size_t>(dq + r) * static_cast<size_t>(n) + static_cast<size_t>(r + k)] =
                q.coeff(dq - k);
    return detail::lu_det(detail::lu_factor(n, std::move(m)));
}

Complex discriminant(const Poly& p) {
    const int d = p.degree();
    if (d < 2) throw DegreeTooSmall("discriminant needs degree >= 2");
    const Complex res = resultant(p, derivative(p));
    const int half = (d * (d - 1)) / 2;
    const double sign = (half % 2 == 0) ? 1.0 : -1.0;
    return sign * res / p.lc();
}

}  // namespace anwel
