#pragma once

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <utility>

#include "levynet/errors.hpp"

namespace levynet {

using Vec = Eigen::VectorXd;
using Arr = Eigen::ArrayXd;
using Mat = Eigen::MatrixXd;

struct RootResult {
    double x = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Bisection on a continuous function with f(lo), f(hi) of opposite sign.
template <class F>
RootResult bisect(F&& f, double lo, double hi, double xtol = 1e-12, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0, true};
    if (fhi == 0.0) return {hi, 0, true};
    if ((flo > 0) == (fhi > 0))
        throw bracketing_error("bisect: endpoints do not bracket a root", std::min(std::abs(flo), std::abs(fhi)));
    RootResult r;
    for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0 || hi - lo < xtol * (1.0 + std::abs(mid))) {
            r.x = mid;
            r.converged = true;
            return r;
        }
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    r.x = 0.5 * (lo + hi);
    return r;
}

/// Brent's method (inverse quadratic + secant + bisection fallback).
template <class F>
RootResult brent(F&& f, double a, double b, double tol = 1e-12, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0, true};
    if (fb == 0.0) return {b, 0, true};
    if ((fa > 0) == (fb > 0))
        throw bracketing_error("brent: endpoints do not bracket a root", std::min(std::abs(fa), std::abs(fb)));
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 1; it <= max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return {b, it, true};
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return {b, max_iter, false};
}

/// Smallest x in [lo, hi] where a monotone false->true predicate holds.
template <class P>
RootResult bisect_predicate(P&& pred, double lo, double hi, double xtol = 1e-10, int max_iter = 200) {
    if (pred(lo)) return {lo, 0, true};
    if (!pred(hi))
        throw bracketing_error("bisect_predicate: predicate false on the whole interval");
    RootResult r;
    for (r.iterations = 0; r.iterations < max_iter && hi - lo > xtol * (1.0 + std::abs(hi)); ++r.iterations) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? hi : lo) = mid;
    }
    r.x = hi;
    r.converged = hi - lo <= xtol * (1.0 + std::abs(hi));
    return r;
}

struct NelderMeadResult {
    Vec x;
    double fmin = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimizer.
NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0,
                             const Vec& step, double ftol = 1e-10, int max_iter = 2000);

/// Gauss-Legendre nodes/weights on [-1, 1].
std::pair<Vec, Vec> gauss_legendre(int n);

/// Gauss-Hermite nodes/weights for weight exp(-x^2) on (-inf, inf).
std::pair<Vec, Vec> gauss_hermite(int n);

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double slope_stderr = 0.0;
};

OlsFit ols(const Vec& x, const Vec& y);

/// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

}  // namespace levynet
