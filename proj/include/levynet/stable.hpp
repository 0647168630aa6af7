#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <vector>

#include "levynet/errors.hpp"
#include "levynet/numerics.hpp"
#include "levynet/rng.hpp"

namespace levynet::stable {

/// Parameters of the stable law S_alpha(beta, sigma, mu) in the
/// characteristic-function convention
///   phi(u) = exp(-|sigma u|^alpha (1 - i beta sgn(u) Phi(u;alpha)) + i u mu),
///   Phi(u;alpha) = tan(pi alpha/2) for alpha != 1, -(2/pi) log|u| at alpha = 1.
struct StableParams {
    double alpha = 2.0;  ///< tail index, (0, 2]
    double beta = 0.0;   ///< skewness, [-1, 1]
    double sigma = 1.0;  ///< scale, > 0
    double mu = 0.0;     ///< location

    void validate() const;
};

struct FitResult {
    StableParams params;
    double log_likelihood = 0.0;
    std::size_t n = 0;
    double ks_stat = 0.0;
    double ks_pvalue = 0.0;
};

/// Tail constant c_alpha = Gamma(1+alpha) sin(pi alpha/2) / pi. Zero at alpha = 2.
double c_alpha(double alpha);

/// One draw via the Chambers-Mallows-Stuck transform.
double sample_one(const StableParams& params, Rng& rng);

/// n i.i.d. draws, deterministic given seed.
Arr sample(const StableParams& params, std::size_t n, std::uint64_t seed);

/// Density by numerical inversion of the characteristic function; switches to
/// the power-tail expansion beyond the crossover point.
double pdf(double x, const StableParams& params);

/// Distribution function (series tails + integrated central grid).
double cdf(double x, const StableParams& params);

/// Asymptotic entry density c_alpha Dw |x|^{-1-alpha} / (2N) of a weight
/// ensemble with normalized scale Dw at width N. alpha must lie in (0, 2).
double tail_density(double x, double alpha, double Dw, double N);

/// Dw = 2 sqrt(Nw Nh) sigma^alpha.
double normalized_scale(double sigma, double alpha, double Nw, double Nh);

/// Kolmogorov-Smirnov statistic and asymptotic p-value of samples against params.
std::pair<double, double> ks_test(const Arr& samples, const StableParams& params);

/// Maximum-likelihood fit with quantile-based initialization. alpha is kept
/// within [0.5, 2]; requires n >= 100 non-degenerate samples.
FitResult fit(const Arr& samples);

/// Gaussian fit expressed in stable parameters (alpha = 2, sigma = std/sqrt(2)).
FitResult fit_gaussian(const Arr& samples);

class StandardStable;

/// Process-wide cache of standardized density models keyed by (alpha, beta).
/// Safe for concurrent use; entries are immutable once built.
const StandardStable& shared_model(double alpha, double beta);

/// Standardized density model for sigma = 1, mu = 0 at fixed (alpha, beta).
/// Central region: cubic interpolation on a grid built by Fourier inversion of
/// the characteristic function (direct quadrature for alpha < 1). Tails: the
/// stable power series once its truncation error passes 1e-9 relative.
class StandardStable {
public:
    StandardStable(double alpha, double beta);
    ~StandardStable();
    StandardStable(StandardStable&&) noexcept;
    StandardStable& operator=(StandardStable&&) noexcept;

    double pdf(double z) const;
    double log_pdf(double z) const;
    double cdf(double z) const;
    double quantile(double p) const;

    double alpha() const;
    double beta() const;
    /// |z| beyond which the tail expansion replaces the grid.
    double series_threshold() const;

    /// z-score of x under (sigma, mu); at alpha = 1 absorbs the S1 drift term.
    static double standardize(double x, const StableParams& params);
    static double unstandardize(double z, const StableParams& params);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace levynet::stable
