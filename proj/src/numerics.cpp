#include "levynet/numerics.hpp"

#include <algorithm>
#include <numbers>
#include <vector>

namespace levynet {

NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0,
                             const Vec& step, double ftol, int max_iter) {
    const int n = static_cast<int>(x0.size());
    std::vector<Vec> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += step[i];
    for (int i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    NelderMeadResult res;
    std::vector<int> order(n + 1);
    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int best = order[0], worst = order[n], second = order[n - 1];
        if (std::abs(fv[worst] - fv[best]) <= ftol * (std::abs(fv[best]) + std::abs(fv[worst]) + 1e-300)) {
            res.converged = true;
            break;
        }
        Vec centroid = Vec::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += pts[i];
        centroid /= n;

        Vec xr = centroid + (centroid - pts[worst]);
        double fr = f(xr);
        if (fr < fv[best]) {
            Vec xe = centroid + 2.0 * (centroid - pts[worst]);
            double fe = f(xe);
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            pts[worst] = xr;
            fv[worst] = fr;
        } else {
            Vec xc = centroid + 0.5 * (pts[worst] - centroid);
            double fc = f(xc);
            if (fc < fv[worst]) {
                pts[worst] = xc;
                fv[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
                    fv[i] = f(pts[i]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    res.x = pts[best];
    res.fmin = fv[best];
    return res;
}

std::pair<Vec, Vec> gauss_legendre(int n) {
    Vec x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton from the Chebyshev-based initial guess.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {x, w};
}

std::pair<Vec, Vec> gauss_hermite(int n) {
    Vec x(n), w(n);
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[n - 1];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[n - 2];
        else
            z = 2.0 * z - x[n - i + 1];
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[n - 1 - i] = z;
        x[i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {x, w};
}

OlsFit ols(const Vec& x, const Vec& y) {
    const auto n = x.size();
    if (n != y.size() || n < 2) throw shape_error("ols: need two same-length vectors, n >= 2");
    const double mx = x.mean(), my = y.mean();
    const Arr dx = x.array() - mx, dy = y.array() - my;
    const double sxx = (dx * dx).sum();
    if (sxx <= 0.0) throw degenerate_data_error("ols: zero variance in x");
    OlsFit fit;
    fit.slope = (dx * dy).sum() / sxx;
    fit.intercept = my - fit.slope * mx;
    const Arr resid = dy - fit.slope * dx;
    const double ss_res = (resid * resid).sum();
    const double ss_tot = (dy * dy).sum();
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.slope_stderr = n > 2 ? std::sqrt(ss_res / ((n - 2) * sxx)) : 0.0;
    return fit;
}

double kolmogorov_sf(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace levynet
