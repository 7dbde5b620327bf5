#pragma once

#include <complex>
#include <span>
#include <vector>

#include "anwel/errors.hpp"

namespace anwel {

using Complex = std::complex<double>;

// Dense univariate polynomial over the complex numbers, coefficients stored
// low degree first. The zero polynomial has an empty coefficient vector and
// degree -1. Arithmetic trims trailing coefficients that cancel exactly;
// numerically tiny leading coefficients are only dropped by trimmed().
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Complex> coeffs);

    static Poly zero() { return Poly{}; }
    static Poly one() { return monomial(0); }
    static Poly x() { return monomial(1); }
    static Poly monomial(int deg, Complex coeff = Complex(1.0));
    static Poly from_real(std::span<const double> coeffs);
    // Monic product of (x - r) over the given roots.
    static Poly from_roots(std::span<const Complex> roots);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Complex coeff(int k) const;
    Complex lc() const { return c_.empty() ? Complex(0.0) : c_.back(); }
    const std::vector<Complex>& coeffs() const { return c_; }
    double coeff_scale() const;  // max |c_k|, 0 for the zero polynomial

    bool is_real(double tol = 1e-12) const;
    std::vector<double> real_coeffs(double tol = 1e-12) const;  // throws DegreeMismatch if not real
    Poly realified() const;  // imaginary parts dropped
    Poly conjugated() const;

    Poly monic() const;                // divides by lc; identity for zero poly
    Poly trimmed(double tol) const;    // drop leading coeffs below tol * coeff_scale()

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, Complex s);
    friend Poly operator*(Complex s, const Poly& a) { return a * s; }
    friend Poly operator-(const Poly& a) { return a * Complex(-1.0); }
    bool operator==(const Poly&) const = default;

  private:
    void strip_exact_zeros();
    std::vector<Complex> c_;
};

Poly derivative(const Poly& p);
Poly nth_derivative(const Poly& p, int m);
Complex eval(const Poly& p, Complex x);
// p(x + t); exact Taylor shift.
Poly shifted(const Poly& p, Complex t);

// A group of approximate roots identified as one root of higher multiplicity.
// center is the mean of the group, radius the largest deviation from it.
struct RootCluster {
    Complex center;
    int multiplicity = 1;
    double radius = 0.0;
};

// All complex roots of p (degree >= 1) with multiplicity detected by
// clustering: approximations merge when they sit within a tol^(1/m)-scaled
// radius of each other. Simultaneous (Aberth) iteration plus Newton polish;
// deterministic for a fixed input. Throws NonConvergence if residuals stay
// above tolerance, BadIndices if degree < 1.
std::vector<RootCluster> all_roots(const Poly& p, double tol = 1e-9);

// Sylvester resultant Res(p, q); determinant evaluated with partial pivoting.
Complex resultant(const Poly& p, const Poly& q);

// (-1)^(d(d-1)/2) Res(p, p') / lc(p). Throws DegreeTooSmall for degree < 2.
Complex discriminant(const Poly& p);

}  // namespace anwel
