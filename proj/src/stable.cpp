#include "levynet/stable.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

namespace levynet::stable {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogFloor = -690.0;  // log(~1e-300)

bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) < tol; }

// ---------------------------------------------------------------------------
// Tail expansion. For z -> +inf and effective skewness be (be = beta on the
// right side, -beta on the left),
//   f(z) = (1/pi) sum_k (-1)^{k-1} Gamma(k a + 1)/k! lam^k sin(k Theta) z^{-k a - 1}
// with lam = sqrt(1 + be^2 tan^2(pi a/2)), Theta = pi a/2 + atan(be tan(pi a/2)).
// Convergent for a < 1, asymptotic for a > 1 (optimal truncation).
// ---------------------------------------------------------------------------
struct SideSeries {
    double lam = 1.0;
    double theta = 0.0;
    double thr = kInf;       // series used for z >= thr
    bool light = false;      // all sine factors vanish: lighter-than-power tail
    bool one_term = false;   // near alpha = 1 with skew: leading term only
    double be = 0.0;
};

struct SeriesEval {
    double value = 0.0;
    double err = kInf;
    bool ok = false;
};

SeriesEval series_sum(double a, const SideSeries& s, double z, bool want_cdf) {
    SeriesEval out;
    if (s.light) {
        out.value = 0.0;
        out.err = 0.0;
        out.ok = true;
        return out;
    }
    if (s.one_term) {
        const double ca = c_alpha(a);
        out.value = want_cdf ? ca / a * (1.0 + s.be) * std::pow(z, -a)
                             : ca * (1.0 + s.be) * std::pow(z, -1.0 - a);
        out.err = out.value * std::pow(z, -a);
        out.ok = true;
        return out;
    }
    const double lz = std::log(z), ll = std::log(s.lam);
    double sum = 0.0, prev_env = kInf;
    for (int k = 1; k <= 80; ++k) {
        double lenv = std::lgamma(k * a + 1.0) - std::lgamma(k + 1.0) + k * ll - k * a * lz;
        lenv += want_cdf ? -std::log(k * a) : -lz;
        const double env = std::exp(lenv) / kPi;
        if (env > prev_env) {  // asymptotic divergence onset
            out.err = env;
            break;
        }
        const double sgn = (k % 2 == 1) ? 1.0 : -1.0;
        sum += sgn * env * std::sin(k * s.theta);
        prev_env = env;
        out.err = env;
        if (env < 1e-17 * (std::abs(sum) + 1e-300)) break;
    }
    out.value = sum;
    out.ok = out.err <= 1e-9 * std::max(std::abs(sum), 1e-300) && sum > 0.0;
    return out;
}

SideSeries make_side(double a, double be) {
    SideSeries s;
    s.be = be;
    if (near(a, 1.0)) {
        // tan(pi a/2) pole: fall back to the leading-order tail.
        s.one_term = near(be, -1.0) ? false : true;
        s.light = near(be, -1.0);
        s.lam = 1.0;
        s.theta = kPi / 2.0;
        return s;
    }
    const double t = std::tan(kPi * a / 2.0);
    s.lam = std::sqrt(1.0 + be * be * t * t);
    s.theta = kPi * a / 2.0 + std::atan(be * t);
    if (std::abs(std::sin(s.theta)) < 1e-9 && std::abs(std::sin(2.0 * s.theta)) < 1e-9) s.light = true;
    return s;
}

// Composite Gauss-Legendre inversion of the characteristic function:
//   f(z) = (1/pi) int_0^umax exp(-u^a) cos(z u - eta(u)) du,
//   eta(u) = be tan(pi a/2) u^a   (a != 1),   -be (2/pi) u ln u   (a = 1).
// Interval length tracks the oscillation frequency.
double cf_inversion(double a, double be, double z, int refine_level) {
    static const auto gl8 = gauss_legendre(8);
    const double umax = std::max(std::pow(37.0, 1.0 / a), 12.0);
    const bool unit_a = near(a, 1.0);
    const double t = unit_a ? 0.0 : std::tan(kPi * a / 2.0);
    double freq = std::abs(z) + 1.0;
    if (unit_a)
        freq += std::abs(be) * (2.0 / kPi) * (std::log(umax) + 1.0);
    else
        freq += std::abs(be * t) * a * std::max(1.0, std::pow(umax, a - 1.0));
    const int base = static_cast<int>(std::ceil(umax * freq / kPi));
    const int nseg = std::max(16, base) << refine_level;
    const double h = umax / nseg;
    double total = 0.0;
    for (int seg = 0; seg < nseg; ++seg) {
        const double lo = seg * h;
        double acc = 0.0;
        for (int j = 0; j < 8; ++j) {
            const double u = lo + 0.5 * h * (gl8.first[j] + 1.0);
            if (u <= 0.0) continue;
            const double ua = std::pow(u, a);
            const double eta = unit_a ? -be * (2.0 / kPi) * u * std::log(u) : be * t * ua;
            acc += gl8.second[j] * std::exp(-ua) * std::cos(z * u - eta);
        }
        total += acc * 0.5 * h;
    }
    return total / kPi;
}

double gaussian_pdf_std(double z) { return std::exp(-0.25 * z * z) / (2.0 * std::sqrt(kPi)); }
double gaussian_cdf_std(double z) { return 0.5 * std::erfc(-0.5 * z); }

}  // namespace

void StableParams::validate() const {
    if (!(alpha > 0.0) || alpha > 2.0) throw domain_error("stable: alpha must lie in (0, 2]");
    if (!(beta >= -1.0 && beta <= 1.0)) throw domain_error("stable: beta must lie in [-1, 1]");
    if (!(sigma > 0.0)) throw domain_error("stable: sigma must be positive");
    if (!std::isfinite(mu)) throw domain_error("stable: mu must be finite");
}

double c_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > 2.0) throw domain_error("c_alpha: alpha must lie in (0, 2]");
    return std::tgamma(1.0 + alpha) * std::sin(kPi * alpha / 2.0) / kPi;
}

double sample_one(const StableParams& p, Rng& rng) {
    const double v = kPi * (rng.uniform_open() - 0.5);
    const double w = rng.exponential();
    const double a = p.alpha, b = p.beta;
    if (near(a, 1.0)) {
        const double half = kPi / 2.0;
        const double x = (1.0 / half) * ((half + b * v) * std::tan(v) -
                                         b * std::log((half * w * std::cos(v)) / (half + b * v)));
        return p.sigma * x + (2.0 / kPi) * b * p.sigma * std::log(p.sigma) + p.mu;
    }
    double x;
    if (b == 0.0) {
        const double cv = std::cos(v);
        x = std::sin(a * v) / std::pow(cv, 1.0 / a) *
            std::pow(std::max(std::cos((1.0 - a) * v), 1e-300) / w, (1.0 - a) / a);
    } else {
        const double t = std::tan(kPi * a / 2.0);
        const double bab = std::atan(b * t) / a;
        const double sab = std::pow(1.0 + b * b * t * t, 0.5 / a);
        const double cv = std::cos(v);
        x = sab * std::sin(a * (v + bab)) / std::pow(cv, 1.0 / a) *
            std::pow(std::max(std::cos(v - a * (v + bab)), 1e-300) / w, (1.0 - a) / a);
    }
    return p.sigma * x + p.mu;
}

Arr sample(const StableParams& params, std::size_t n, std::uint64_t seed) {
    params.validate();
    if (n < 1) throw domain_error("sample: n must be >= 1");
    Rng rng(seed);
    Arr out(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = sample_one(params, rng);
    return out;
}

// ---------------------------------------------------------------------------
// StandardStable
// ---------------------------------------------------------------------------

struct StandardStable::Impl {
    double alpha = 2.0, beta = 0.0;
    enum class Kind { Gaussian, Cauchy, General } kind = Kind::General;
    SideSeries side[2];  // [0] right, [1] left
    double support_lo = -kInf, support_hi = kInf;

    // central grid
    bool has_grid = false;
    double x0 = 0.0, dx = 0.0;
    std::vector<double> pv;   // density at nodes
    std::vector<double> cum;  // integral of density from x0 to node i
    double anchor = 0.0;      // cdf at x0

    double grid_hi() const { return x0 + dx * (static_cast<double>(pv.size()) - 1.0); }

    void build();
    void build_grid_fft(double z_need);
    void build_grid_quadrature(double z_need);
    void finalize_cumulative();

    double pdf(double z) const;
    double cdf(double z) const;
    double grid_interp_pdf(double z) const;
    double grid_cdf(double z) const;
};

namespace {

double scan_threshold(double a, const SideSeries& s, double z_start, double z_cap) {
    if (s.light) return kInf;
    if (s.one_term) return kInf;  // caller decides the fallback
    for (double z = z_start; z <= z_cap; z *= 1.12) {
        if (series_sum(a, s, z, false).ok && series_sum(a, s, z, true).ok) return z;
    }
    return kInf;
}

}  // namespace

void StandardStable::Impl::build() {
    if (near(alpha, 2.0)) {
        kind = Kind::Gaussian;
        return;
    }
    if (near(alpha, 1.0) && near(beta, 0.0)) {
        kind = Kind::Cauchy;
        return;
    }
    kind = Kind::General;
    side[0] = make_side(alpha, beta);
    side[1] = make_side(alpha, -beta);
    if (alpha < 1.0 && near(std::abs(beta), 1.0)) {
        // totally skewed with alpha < 1: one-sided support
        (beta > 0 ? support_lo : support_hi) = 0.0;
    }

    const double z_start = alpha < 1.0 ? 0.6 : 6.0;
    const double z_cap = alpha < 1.0 ? 80.0 : 420.0;
    double z_need = 0.0;
    for (auto& s : side) {
        if (s.light) continue;
        s.thr = scan_threshold(alpha, s, z_start, z_cap);
        if (s.thr == kInf) {
            s.one_term = true;
            s.thr = 600.0;
        }
        z_need = std::max(z_need, s.thr);
    }
    z_need = std::max(z_need * 1.05 + 0.5, 4.0);
    if (alpha >= 1.0)
        build_grid_fft(z_need);
    else
        build_grid_quadrature(z_need);
    for (auto& s : side)
        if (s.light) s.thr = kInf;
    finalize_cumulative();
}

void StandardStable::Impl::build_grid_fft(double z_need) {
    const int M = 1 << 15;
    const double umax = std::max(std::pow(37.0, 1.0 / alpha), 12.0);
    const double du = 2.0 * umax / M;
    const double dxg = kPi / umax;
    const bool unit_a = near(alpha, 1.0);
    const double t = unit_a ? 0.0 : std::tan(kPi * alpha / 2.0);

    std::vector<std::complex<double>> in(M), out(M);
    for (int j = 0; j < M; ++j) {
        const double u = -umax + j * du;
        const double au = std::abs(u);
        if (au < 1e-300) {
            in[j] = {1.0, 0.0};
        } else {
            const double mag = std::exp(-std::pow(au, alpha));
            const double phase = unit_a ? -beta * (2.0 / kPi) * u * std::log(au)
                                        : beta * t * std::copysign(std::pow(au, alpha), u);
            in[j] = std::polar(mag, phase);
        }
        if (j % 2 != 0) in[j] = -in[j];
    }
    Eigen::FFT<double> fft;
    fft.fwd(out, in);

    const double cap = 0.85 * (M / 2) * dxg;
    const double zr = std::min(z_need, cap);
    const int khalf = static_cast<int>(std::ceil(zr / dxg)) + 2;
    const int klo = M / 2 - khalf, khi = M / 2 + khalf;
    x0 = (klo - M / 2) * dxg;
    dx = dxg;
    pv.resize(khi - klo + 1);
    for (int k = klo; k <= khi; ++k) {
        const double val = (du / (2.0 * kPi)) * ((k % 2 == 0) ? 1.0 : -1.0) * out[k].real();
        pv[k - klo] = std::max(val, 0.0);
    }
    has_grid = true;
}

void StandardStable::Impl::build_grid_quadrature(double z_need) {
    static const auto gl8 = gauss_legendre(8);
    const double umax = std::pow(37.0, 1.0 / alpha);
    const double t = std::tan(kPi * alpha / 2.0);
    const double freq = z_need + 1.0 + std::abs(beta * t);
    const int nseg = static_cast<int>(std::ceil(umax * freq / kPi));
    std::vector<double> un, uw, env, eta;
    un.reserve(8 * nseg);
    const double h = umax / nseg;
    for (int seg = 0; seg < nseg; ++seg) {
        for (int j = 0; j < 8; ++j) {
            const double u = seg * h + 0.5 * h * (gl8.first[j] + 1.0);
            if (u <= 0.0) continue;
            un.push_back(u);
            uw.push_back(gl8.second[j] * 0.5 * h);
            env.push_back(std::exp(-std::pow(u, alpha)));
            eta.push_back(beta * t * std::pow(u, alpha));
        }
    }
    dx = 0.02;
    const int half = static_cast<int>(std::ceil(z_need / dx)) + 2;
    x0 = -half * dx;
    pv.resize(2 * half + 1);
    for (int i = 0; i < static_cast<int>(pv.size()); ++i) {
        const double z = x0 + i * dx;
        double acc = 0.0;
        for (std::size_t j = 0; j < un.size(); ++j)
            acc += uw[j] * env[j] * std::cos(z * un[j] - eta[j]);
        pv[i] = std::max(acc / kPi, 0.0);
    }
    has_grid = true;
}

void StandardStable::Impl::finalize_cumulative() {
    const int n = static_cast<int>(pv.size());
    cum.assign(n, 0.0);
    auto at = [&](int i) { return pv[std::clamp(i, 0, n - 1)]; };
    for (int i = 0; i + 1 < n; ++i) {
        const double seg = dx * (-at(i - 1) + 13.0 * at(i) + 13.0 * at(i + 1) - at(i + 2)) / 24.0;
        cum[i + 1] = cum[i] + std::max(seg, 0.0);
    }
    if (side[1].light || x0 <= support_lo) {
        anchor = 0.0;
    } else {
        anchor = series_sum(alpha, side[1], -x0, true).value;
        anchor = std::clamp(anchor, 0.0, 1.0);
    }
}

double StandardStable::Impl::grid_interp_pdf(double z) const {
    const int n = static_cast<int>(pv.size());
    const double s = (z - x0) / dx;
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, n - 2);
    const double u = s - i;
    auto at = [&](int k) { return pv[std::clamp(k, 0, n - 1)]; };
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    const double a0 = 2.0 * p1;
    const double a1 = p2 - p0;
    const double a2 = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
    const double a3 = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
    return std::max(0.5 * (a0 + u * (a1 + u * (a2 + u * a3))), 0.0);
}

double StandardStable::Impl::grid_cdf(double z) const {
    const int n = static_cast<int>(pv.size());
    const double s = (z - x0) / dx;
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, n - 2);
    const double u = s - i;
    auto at = [&](int k) { return pv[std::clamp(k, 0, n - 1)]; };
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    const double a0 = 2.0 * p1;
    const double a1 = p2 - p0;
    const double a2 = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
    const double a3 = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
    const double part = 0.5 * dx * (a0 * u + a1 * u * u / 2.0 + a2 * u * u * u / 3.0 + a3 * u * u * u * u / 4.0);
    return std::clamp(anchor + cum[i] + std::max(part, 0.0), 0.0, 1.0);
}

double StandardStable::Impl::pdf(double z) const {
    switch (kind) {
        case Kind::Gaussian:
            return gaussian_pdf_std(z);
        case Kind::Cauchy:
            return 1.0 / (kPi * (1.0 + z * z));
        case Kind::General:
            break;
    }
    if (z <= support_lo || z >= support_hi) return 0.0;
    const int sd = z >= 0.0 ? 0 : 1;
    const double az = std::abs(z);
    if (az >= side[sd].thr) return std::max(series_sum(alpha, side[sd], az, false).value, 0.0);
    if (has_grid && z >= x0 && z <= grid_hi()) return grid_interp_pdf(z);
    return side[sd].light ? 0.0 : std::max(series_sum(alpha, side[sd], az, false).value, 0.0);
}

double StandardStable::Impl::cdf(double z) const {
    switch (kind) {
        case Kind::Gaussian:
            return gaussian_cdf_std(z);
        case Kind::Cauchy:
            return 0.5 + std::atan(z) / kPi;
        case Kind::General:
            break;
    }
    if (z <= support_lo) return 0.0;
    if (z >= support_hi) return 1.0;
    if (z >= 0.0) {
        if (z >= side[0].thr) return 1.0 - std::clamp(series_sum(alpha, side[0], z, true).value, 0.0, 1.0);
        if (has_grid && z <= grid_hi()) return grid_cdf(z);
        return side[0].light ? 1.0 : 1.0 - std::clamp(series_sum(alpha, side[0], z, true).value, 0.0, 1.0);
    }
    const double az = -z;
    if (az >= side[1].thr) return std::clamp(series_sum(alpha, side[1], az, true).value, 0.0, 1.0);
    if (has_grid && z >= x0) return grid_cdf(z);
    return side[1].light ? 0.0 : std::clamp(series_sum(alpha, side[1], az, true).value, 0.0, 1.0);
}

StandardStable::StandardStable(double alpha, double beta) : impl_(std::make_unique<Impl>()) {
    if (!(alpha >= 0.5 && alpha <= 2.0))
        throw domain_error("StandardStable: alpha must lie in [0.5, 2]");
    if (!(beta >= -1.0 && beta <= 1.0)) throw domain_error("StandardStable: beta must lie in [-1, 1]");
    impl_->alpha = alpha;
    impl_->beta = beta;
    impl_->build();
}

StandardStable::~StandardStable() = default;
StandardStable::StandardStable(StandardStable&&) noexcept = default;
StandardStable& StandardStable::operator=(StandardStable&&) noexcept = default;

double StandardStable::pdf(double z) const { return impl_->pdf(z); }

double StandardStable::log_pdf(double z) const {
    const double p = impl_->pdf(z);
    return p > 0.0 ? std::log(p) : kLogFloor;
}

double StandardStable::cdf(double z) const { return impl_->cdf(z); }

double StandardStable::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw domain_error("quantile: p must lie in (0, 1)");
    double lo = -8.0, hi = 8.0;
    if (impl_->support_lo > -kInf) lo = impl_->support_lo;
    if (impl_->support_hi < kInf) hi = impl_->support_hi;
    for (int it = 0; it < 80 && impl_->cdf(lo) > p; ++it) lo = lo * 4.0 - 1.0;
    for (int it = 0; it < 80 && impl_->cdf(hi) < p; ++it) hi = hi * 4.0 + 1.0;
    const auto r = bisect([&](double z) { return impl_->cdf(z) - p; }, lo, hi, 1e-12, 200);
    return r.x;
}

double StandardStable::alpha() const { return impl_->alpha; }
double StandardStable::beta() const { return impl_->beta; }

double StandardStable::series_threshold() const {
    return std::min(impl_->side[0].thr, impl_->side[1].thr);
}

double StandardStable::standardize(double x, const StableParams& p) {
    if (near(p.alpha, 1.0))
        return (x - p.mu - (2.0 / kPi) * p.beta * p.sigma * std::log(p.sigma)) / p.sigma;
    return (x - p.mu) / p.sigma;
}

double StandardStable::unstandardize(double z, const StableParams& p) {
    if (near(p.alpha, 1.0))
        return p.sigma * z + p.mu + (2.0 / kPi) * p.beta * p.sigma * std::log(p.sigma);
    return p.sigma * z + p.mu;
}

// ---------------------------------------------------------------------------
// Point evaluation ops
// ---------------------------------------------------------------------------

const StandardStable& shared_model(double alpha, double beta) {
    static std::mutex m;
    static std::map<std::pair<double, double>, std::unique_ptr<StandardStable>> cache;
    std::lock_guard lock(m);
    auto key = std::make_pair(alpha, beta);
    auto it = cache.find(key);
    if (it == cache.end()) {
        if (cache.size() > 64) cache.clear();
        it = cache.emplace(key, std::make_unique<StandardStable>(alpha, beta)).first;
    }
    return *it->second;
}

double pdf(double x, const StableParams& params) {
    params.validate();
    if (params.alpha < 0.5)
        throw domain_error("pdf: alpha below 0.5 is outside the supported range");
    const double z = StandardStable::standardize(x, params);
    if (near(params.alpha, 2.0)) return gaussian_pdf_std(z) / params.sigma;
    if (near(params.alpha, 1.0) && near(params.beta, 0.0))
        return 1.0 / (kPi * (1.0 + z * z)) / params.sigma;

    const int sd = z >= 0.0 ? 0 : 1;
    const SideSeries side = make_side(params.alpha, sd == 0 ? params.beta : -params.beta);
    if (params.alpha < 1.0 && near(std::abs(params.beta), 1.0)) {
        if ((params.beta > 0 && z <= 0.0) || (params.beta < 0 && z >= 0.0)) return 0.0;
    }
    if (!side.light && !side.one_term) {
        const auto s = series_sum(params.alpha, side, std::abs(z), false);
        if (s.ok && std::abs(z) > 4.0) return s.value / params.sigma;
    }
    // adaptive refinement of the oscillatory inversion integral
    double prev = cf_inversion(params.alpha, params.beta, z, 0);
    for (int level = 1; level <= 3; ++level) {
        const double cur = cf_inversion(params.alpha, params.beta, z, level);
        const double resid = std::abs(cur - prev);
        if (resid <= std::max(1e-12, 1e-9 * std::abs(cur)))
            return std::max(cur, 0.0) / params.sigma;
        prev = cur;
    }
    const double final_resid = std::abs(cf_inversion(params.alpha, params.beta, z, 4) - prev);
    if (final_resid > 1e-6)
        throw numerical_error("pdf: characteristic-function quadrature did not converge", final_resid);
    return std::max(prev, 0.0) / params.sigma;
}

double cdf(double x, const StableParams& params) {
    params.validate();
    if (params.alpha < 0.5)
        throw domain_error("cdf: alpha below 0.5 is outside the supported range");
    return shared_model(params.alpha, params.beta).cdf(StandardStable::standardize(x, params));
}

double tail_density(double x, double alpha, double Dw, double N) {
    if (x == 0.0) throw domain_error("tail_density: x must be nonzero");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw domain_error("tail_density: alpha must lie in (0, 2); the Gaussian law has no power tail");
    if (!(Dw > 0.0)) throw domain_error("tail_density: Dw must be positive");
    if (!(N >= 1.0)) throw domain_error("tail_density: N must be >= 1");
    return c_alpha(alpha) * Dw / (2.0 * N) * std::pow(std::abs(x), -1.0 - alpha);
}

double normalized_scale(double sigma, double alpha, double Nw, double Nh) {
    if (!(sigma > 0.0)) throw domain_error("normalized_scale: sigma must be positive");
    if (!(alpha > 0.0 && alpha <= 2.0)) throw domain_error("normalized_scale: alpha must lie in (0, 2]");
    if (!(Nw >= 1.0 && Nh >= 1.0)) throw domain_error("normalized_scale: Nw, Nh must be >= 1");
    return 2.0 * std::sqrt(Nw * Nh) * std::pow(sigma, alpha);
}

std::pair<double, double> ks_test(const Arr& samples, const StableParams& params) {
    params.validate();
    const auto n = samples.size();
    if (n < 10) throw domain_error("ks_test: need at least 10 samples");
    std::vector<double> z(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) z[i] = StandardStable::standardize(samples[i], params);
    std::sort(z.begin(), z.end());
    const StandardStable model(params.alpha, params.beta);
    double d = 0.0;
    const double dn = static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double f = model.cdf(z[i]);
        d = std::max(d, std::max(f - i / dn, (i + 1) / dn - f));
    }
    const double lam = (std::sqrt(dn) + 0.12 + 0.11 / std::sqrt(dn)) * d;
    return {d, kolmogorov_sf(lam)};
}

// ---------------------------------------------------------------------------
// Fitting
// ---------------------------------------------------------------------------

namespace {

struct QuantileRefs {
    std::vector<double> alphas, nu_alpha, iqr;
};

const QuantileRefs& quantile_refs() {
    static QuantileRefs refs = [] {
        QuantileRefs r;
        for (double a = 0.5; a <= 2.0 + 1e-9; a += 0.1) {
            const StandardStable m(std::min(a, 2.0), 0.0);
            const double q05 = m.quantile(0.05), q25 = m.quantile(0.25);
            const double q75 = m.quantile(0.75), q95 = m.quantile(0.95);
            r.alphas.push_back(std::min(a, 2.0));
            r.nu_alpha.push_back((q95 - q05) / (q75 - q25));
            r.iqr.push_back(q75 - q25);
        }
        return r;
    }();
    return refs;
}

double sample_quantile(const std::vector<double>& sorted, double p) {
    const double h = (sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

StableParams decode(const Vec& u) {
    StableParams p;
    p.alpha = 1.25 + 0.75 * std::sin(u[0]);
    p.beta = std::sin(u[1]);
    p.sigma = std::exp(u[2]);
    p.mu = u[3];
    return p;
}

}  // namespace

FitResult fit(const Arr& samples) {
    const auto n = samples.size();
    if (n < 100) throw domain_error("fit: need at least 100 samples");
    std::vector<double> sorted(samples.data(), samples.data() + n);
    std::sort(sorted.begin(), sorted.end());
    if (!(sorted.back() > sorted.front()))
        throw degenerate_data_error("fit: all samples are identical");

    const double q05 = sample_quantile(sorted, 0.05), q25 = sample_quantile(sorted, 0.25);
    const double q50 = sample_quantile(sorted, 0.50), q75 = sample_quantile(sorted, 0.75);
    const double q95 = sample_quantile(sorted, 0.95);
    const double iqr = std::max(q75 - q25, 1e-12 * (sorted.back() - sorted.front()));
    const double nu_a = (q95 - q05) / iqr;
    const double nu_b = (q95 + q05 - 2.0 * q50) / std::max(q95 - q05, 1e-300);

    const auto& refs = quantile_refs();
    double a0 = 2.0, iqr_ref = refs.iqr.back();
    for (std::size_t i = 0; i + 1 < refs.alphas.size(); ++i) {
        // nu_alpha decreases with alpha
        if (nu_a <= refs.nu_alpha[i] && nu_a >= refs.nu_alpha[i + 1]) {
            const double t = (refs.nu_alpha[i] - nu_a) / (refs.nu_alpha[i] - refs.nu_alpha[i + 1]);
            a0 = refs.alphas[i] + t * (refs.alphas[i + 1] - refs.alphas[i]);
            iqr_ref = refs.iqr[i] + t * (refs.iqr[i + 1] - refs.iqr[i]);
            break;
        }
    }
    if (nu_a > refs.nu_alpha.front()) {
        a0 = refs.alphas.front();
        iqr_ref = refs.iqr.front();
    }
    const double b0 = std::clamp(2.0 * nu_b, -0.9, 0.9);
    const double s0 = iqr / iqr_ref;
    const double m0 = q50;

    auto objective = [&](const Vec& u) -> double {
        const StableParams p = decode(u);
        try {
            const StandardStable model(p.alpha, p.beta);
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i)
                acc += model.log_pdf(StandardStable::standardize(samples[i], p));
            return -(acc / static_cast<double>(n) - std::log(p.sigma));
        } catch (const std::exception&) {
            return 1e30;
        }
    };

    Vec u0(4);
    u0 << std::asin(std::clamp((a0 - 1.25) / 0.75, -1.0, 1.0)),
        std::asin(std::clamp(b0, -1.0, 1.0)), std::log(s0), m0;
    Vec step(4);
    step << 0.15, 0.3, 0.15, 0.25 * s0;
    auto res = nelder_mead(objective, u0, step, 1e-11, 600);
    Vec step2 = step * 0.12;
    res = nelder_mead(objective, res.x, step2, 1e-12, 300);

    FitResult out;
    out.params = decode(res.x);
    out.params.alpha = std::clamp(out.params.alpha, 0.5, 2.0);
    out.n = static_cast<std::size_t>(n);
    out.log_likelihood = -res.fmin * static_cast<double>(n);
    std::tie(out.ks_stat, out.ks_pvalue) = ks_test(samples, out.params);
    return out;
}

FitResult fit_gaussian(const Arr& samples) {
    const auto n = samples.size();
    if (n < 2) throw domain_error("fit_gaussian: need at least 2 samples");
    const double mean = samples.mean();
    const double var = (samples - mean).square().sum() / static_cast<double>(n);
    if (!(var > 0.0)) throw degenerate_data_error("fit_gaussian: zero variance");
    FitResult out;
    out.params = {2.0, 0.0, std::sqrt(var / 2.0), mean};
    out.n = static_cast<std::size_t>(n);
    out.log_likelihood =
        -0.5 * static_cast<double>(n) * (std::log(2.0 * kPi * var) + 1.0);
    std::tie(out.ks_stat, out.ks_pvalue) = ks_test(samples, out.params);
    return out;
}

}  // namespace levynet::stable
