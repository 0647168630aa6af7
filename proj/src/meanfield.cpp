#include "levynet/meanfield.hpp"

#include <algorithm>
#include <cmath>

#include "levynet/errors.hpp"
#include "levynet/numerics.hpp"
#include "levynet/stable.hpp"

namespace levynet::meanfield {

namespace {

// |phi(x)| is within 1e-9 of its saturation value beyond this argument.
double saturation_arg(Activation phi) {
    switch (phi) {
        case Activation::Tanh:
            return 10.7;  // tanh(x) ~ 1 - 2 exp(-2x)
    }
    return 10.7;
}

}  // namespace

double q_map(double q_prev, double alpha, double Dw, double Db, Activation act) {
    if (!(q_prev >= 0.0)) throw domain_error("q_map: q_prev must be nonnegative");
    if (!(alpha >= 1.0 && alpha <= 2.0)) throw domain_error("q_map: alpha must lie in [1, 2]");
    if (!(Dw > 0.0) || !(Db >= 0.0)) throw domain_error("q_map: need Dw > 0, Db >= 0");
    if (q_prev == 0.0) return Db;  // point-mass input, phi(0) = 0

    const auto& f = stable::shared_model(alpha, 0.0);
    const double sq = std::pow(0.5 * q_prev, 1.0 / alpha);
    const double z_sat = saturation_arg(act) / sq;

    static const auto gl64 = gauss_legendre(64);
    static const auto gl16 = gauss_legendre(16);
    double integral = 0.0;

    const double z_inner = std::min(z_sat, 5.0);
    for (int j = 0; j < 64; ++j) {
        const double s = 0.5 * z_inner * (gl64.first[j] + 1.0);
        integral += gl64.second[j] * 0.5 * z_inner *
                    std::pow(std::abs(phi(act, sq * s)), alpha) * f.pdf(s);
    }
    if (z_sat > z_inner) {
        // power-law region: integrate in log s, ~16 nodes per decade
        const double t_hi = std::log(z_sat / z_inner);
        const int nseg = std::max(1, static_cast<int>(std::ceil(t_hi / std::log(10.0))));
        const double h = t_hi / nseg;
        for (int seg = 0; seg < nseg; ++seg) {
            for (int j = 0; j < 16; ++j) {
                const double t = seg * h + 0.5 * h * (gl16.first[j] + 1.0);
                const double s = z_inner * std::exp(t);
                integral += gl16.second[j] * 0.5 * h * s *
                            std::pow(std::abs(phi(act, sq * s)), alpha) * f.pdf(s);
            }
        }
    }
    const double sat = phi_saturation(act);
    const double tail_mass = 1.0 - f.cdf(z_sat);
    integral = 2.0 * integral + 2.0 * std::pow(sat, alpha) * tail_mass;
    return Dw * integral + Db;
}

MeanFieldTrajectory fixed_point(double alpha, double Dw, double Db, double q0, double tol,
                                int max_iter, Activation act) {
    if (!(tol > 0.0)) throw domain_error("fixed_point: tol must be positive");
    if (!(q0 >= 0.0)) throw domain_error("fixed_point: q0 must be nonnegative");
    MeanFieldTrajectory traj;
    traj.q.push_back(q0);
    double q = Dw * q0 + Db;  // stated initial condition, not a map step
    traj.q.push_back(q);
    double prev_delta = 0.0;
    for (int it = 2; it <= max_iter; ++it) {
        double next = q_map(q, alpha, Dw, Db, act);
        double delta = next - q;
        if (prev_delta * delta < 0.0) next = 0.5 * q + 0.5 * next;  // damp oscillation
        delta = next - q;
        traj.q.push_back(next);
        if (next > 1e12) throw divergence_error("fixed_point: trajectory exceeded overflow guard", next);
        q = next;
        if (std::abs(delta) < tol * std::max(q, 1.0)) {
            traj.converged = true;
            break;
        }
        prev_delta = delta;
    }
    traj.qstar = q;
    return traj;
}

TransitionResult ordered_transition(double alpha, double Db, double threshold, Activation act) {
    if (!(threshold > 0.0)) throw domain_error("ordered_transition: threshold must be positive");
    const double lo = 1e-3, hi = 1e3;

    auto qstar_reaches = [&](double Dw) {
        // monotone-from-above iteration: dipping well below the threshold
        // decides the predicate early
        MeanFieldTrajectory t;
        double q = Dw * 1.0 + Db;
        double prev_delta = 0.0;
        for (int it = 0; it < 4000; ++it) {
            double next = q_map(q, alpha, Dw, Db, act);
            double delta = next - q;
            if (prev_delta * delta < 0.0) next = 0.5 * q + 0.5 * next;
            delta = next - q;
            if (next > 1e12) return true;
            if (next < 0.05 * threshold) return false;
            if (std::abs(delta) < 1e-9 * std::max(next, 1.0)) return next >= threshold;
            q = next;
            prev_delta = delta;
        }
        return q >= threshold;
    };

    if (qstar_reaches(lo))
        throw bracketing_error("ordered_transition: threshold already reached at Dw = 1e-3");
    if (!qstar_reaches(hi))
        throw bracketing_error("ordered_transition: threshold not reached by Dw = 1e3");
    const auto r = bisect_predicate(qstar_reaches, lo, hi, 1e-7, 200);

    TransitionResult out;
    out.Dw_bar = r.x;
    out.iterations = r.iterations;
    out.qstar = fixed_point(alpha, r.x, Db, 1.0, 1e-10, 4000, act).qstar;
    return out;
}

}  // namespace levynet::meanfield
