#pragma once

#include <vector>

#include "levynet/activation.hpp"

namespace levynet::meanfield {

/// q* level at which the ordered transition is declared; the reported value
/// is an order of magnitude, so it stays configurable.
inline constexpr double kTransitionThreshold = 0.01;

/// Iterates q^0..q^L of the fluctuation map and the reached fixed point.
struct MeanFieldTrajectory {
    std::vector<double> q;
    bool converged = false;
    double qstar = 0.0;
};

/// One step of the fluctuation map,
///   q_next = Dw * int |phi(z)|^alpha p_{S_alpha((q_prev/2)^{1/alpha})}(z) dz + Db.
/// The integral truncates where the saturated-tail bound contributes below
/// 1e-9 absolute, so heavy tails cost no accuracy.
double q_map(double q_prev, double alpha, double Dw, double Db, Activation phi = Activation::Tanh);

/// Iterates q_map from q0 with q^1 = Dw q^0 + Db, mild damping on detected
/// oscillation, and stop rule |q^l - q^{l-1}| < tol * max(q^l, 1).
MeanFieldTrajectory fixed_point(double alpha, double Dw, double Db, double q0 = 1.0,
                                double tol = 1e-10, int max_iter = 2000,
                                Activation phi = Activation::Tanh);

struct TransitionResult {
    double Dw_bar = 0.0;
    double qstar = 0.0;
    int iterations = 0;
};

/// Smallest Dw whose fixed point reaches the threshold, by bisection over
/// Dw in [1e-3, 1e3].
TransitionResult ordered_transition(double alpha, double Db,
                                    double threshold = kTransitionThreshold,
                                    Activation phi = Activation::Tanh);

}  // namespace levynet::meanfield
