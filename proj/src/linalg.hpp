#pragma once

// Small dense complex linear algebra used by the resultant and the path
// tracker. Row-major storage; sizes stay below ~50 so no blocking is needed.

#include <cmath>
#include <vector>

#include "anwel/errors.hpp"
#include "anwel/poly.hpp"

namespace anwel::detail {

struct LU {
    int n = 0;
    std::vector<Complex> a;   // factored in place
    std::vector<int> piv;
    int sign = 1;
    bool singular = false;
};

inline LU lu_factor(int n, std::vector<Complex> a) {
    LU lu;
    lu.n = n;
    lu.a = std::move(a);
    lu.piv.resize(n);
    double scale = 0.0;
    for (const Complex& v : lu.a) scale = std::max(scale, std::abs(v));
    const double floor = scale * 1e-14 + 1e-300;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(lu.a[k * n + k]);
        for (int r = k + 1; r < n; ++r) {
            const double v = std::abs(lu.a[r * n + k]);
            if (v > best) { best = v; p = r; }
        }
        lu.piv[k] = p;
        if (p != k) {
            for (int c = 0; c < n; ++c) std::swap(lu.a[k * n + c], lu.a[p * n + c]);
            lu.sign = -lu.sign;
        }
        if (best <= floor) { lu.singular = true; continue; }
        const Complex inv = 1.0 / lu.a[k * n + k];
        for (int r = k + 1; r < n; ++r) {
            const Complex m = lu.a[r * n + k] * inv;
            lu.a[r * n + k] = m;
            if (m != Complex(0.0))
                for (int c = k + 1; c < n; ++c) lu.a[r * n + c] -= m * lu.a[k * n + c];
        }
    }
    return lu;
}

inline void lu_solve_inplace(const LU& lu, std::vector<Complex>& b) {
    const int n = lu.n;
    // All interchanges must hit b before the L-sweep: the stored multipliers
    // live in final row positions, so interleaving swaps with updates would
    // couple them to the wrong components.
    for (int k = 0; k < n; ++k)
        if (lu.piv[k] != k) std::swap(b[k], b[lu.piv[k]]);
    for (int k = 0; k < n; ++k)
        for (int r = k + 1; r < n; ++r) b[r] -= lu.a[r * n + k] * b[k];
    for (int k = n - 1; k >= 0; --k) {
        for (int c = k + 1; c < n; ++c) b[k] -= lu.a[k * n + c] * b[c];
        b[k] /= lu.a[k * n + k];
    }
}

inline Complex lu_det(const LU& lu) {
    if (lu.singular) return Complex(0.0);
    Complex d(static_cast<double>(lu.sign));
    for (int k = 0; k < lu.n; ++k) d *= lu.a[k * lu.n + k];
    return d;
}

}  // namespace anwel::detail
