#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "levynet/activation.hpp"
#include "levynet/numerics.hpp"

namespace levynet::network {

/// Ensemble parameters of a random heavy-tailed feedforward network.
/// Weight entries are S_alpha((Dw/2N)^{1/alpha}) i.i.d., bias entries
/// S_alpha((Db/2)^{1/alpha}); alpha = 2 recovers the Gaussian 1/N scaling.
struct NetworkSpec {
    double alpha = 2.0;
    double Dw = 1.0;
    double Db = 0.0;
    int N = 100;
    int L = 4;
    Activation phi = Activation::Tanh;

    void validate() const;
    double weight_sigma() const;
    double bias_sigma() const;
};

struct Network {
    NetworkSpec spec;
    std::vector<Mat> weights;  // L matrices, N x N
    std::vector<Vec> biases;   // L vectors
    std::uint64_t seed = 0;
};

/// Preactivations h^1..h^L and activations x^0..x^L of one forward pass.
struct LayerState {
    std::vector<Vec> h;
    std::vector<Vec> x;
};

enum class JacobianForm { DW, WD };

Network init(const NetworkSpec& spec, std::uint64_t seed);

LayerState forward(const Network& net, const Vec& x0);

/// Forward pass of many inputs at once; returns activations per layer
/// (index 0 is the input), each N x n_points.
std::vector<Mat> forward_batch(const Network& net, const Mat& x0);

/// D^l W^l (form DW, l in [1, L]) or W^{l+1} D^l (form WD, l in [1, L-1]),
/// with D^l = diag(phi'(h^l)).
Mat layer_jacobian(const Network& net, const LayerState& state, int l, JacobianForm form);

/// d x^L / d x^0 = D^L W^L ... D^1 W^1.
Mat full_jacobian(const Network& net, const LayerState& state);

}  // namespace levynet::network
