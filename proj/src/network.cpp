#include "levynet/network.hpp"

#include <cmath>

#include "levynet/errors.hpp"
#include "levynet/rng.hpp"
#include "levynet/stable.hpp"

namespace levynet::network {

void NetworkSpec::validate() const {
    if (!(alpha >= 1.0 && alpha <= 2.0)) throw domain_error("NetworkSpec: alpha must lie in [1, 2]");
    if (!(Dw > 0.0)) throw domain_error("NetworkSpec: Dw must be positive");
    if (!(Db >= 0.0)) throw domain_error("NetworkSpec: Db must be nonnegative");
    if (N < 1) throw domain_error("NetworkSpec: N must be >= 1");
    if (L < 1) throw domain_error("NetworkSpec: L must be >= 1");
}

double NetworkSpec::weight_sigma() const {
    return std::pow(Dw / (2.0 * static_cast<double>(N)), 1.0 / alpha);
}

double NetworkSpec::bias_sigma() const {
    return Db > 0.0 ? std::pow(Db / 2.0, 1.0 / alpha) : 0.0;
}

Network init(const NetworkSpec& spec, std::uint64_t seed) {
    spec.validate();
    Network net;
    net.spec = spec;
    net.seed = seed;
    net.weights.reserve(spec.L);
    net.biases.reserve(spec.L);

    const stable::StableParams wp{spec.alpha, 0.0, spec.weight_sigma(), 0.0};
    const double bs = spec.bias_sigma();
    Rng rng(seed);
    for (int l = 0; l < spec.L; ++l) {
        Mat w(spec.N, spec.N);
        double* d = w.data();
        for (Eigen::Index k = 0; k < w.size(); ++k) d[k] = stable::sample_one(wp, rng);
        net.weights.push_back(std::move(w));
        Vec b = Vec::Zero(spec.N);
        if (bs > 0.0) {
            const stable::StableParams bp{spec.alpha, 0.0, bs, 0.0};
            for (int i = 0; i < spec.N; ++i) b[i] = stable::sample_one(bp, rng);
        }
        net.biases.push_back(std::move(b));
    }
    return net;
}

LayerState forward(const Network& net, const Vec& x0) {
    if (x0.size() != net.spec.N) throw shape_error("forward: input length must equal N");
    LayerState st;
    st.x.reserve(net.spec.L + 1);
    st.h.reserve(net.spec.L);
    st.x.push_back(x0);
    for (int l = 0; l < net.spec.L; ++l) {
        Vec h = net.weights[l] * st.x.back() + net.biases[l];
        Vec x(h.size());
        for (Eigen::Index i = 0; i < h.size(); ++i) x[i] = phi(net.spec.phi, h[i]);
        st.h.push_back(std::move(h));
        st.x.push_back(std::move(x));
    }
    return st;
}

std::vector<Mat> forward_batch(const Network& net, const Mat& x0) {
    if (x0.rows() != net.spec.N) throw shape_error("forward_batch: input rows must equal N");
    std::vector<Mat> layers;
    layers.reserve(net.spec.L + 1);
    layers.push_back(x0);
    for (int l = 0; l < net.spec.L; ++l) {
        Mat h = net.weights[l] * layers.back();
        h.colwise() += net.biases[l];
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, j) = phi(net.spec.phi, h(i, j));
        layers.push_back(std::move(h));
    }
    return layers;
}

namespace {

Vec dphi_at_layer(const Network& net, const LayerState& state, int l) {
    const Vec& h = state.h[l - 1];
    Vec d(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i) d[i] = phi_prime(net.spec.phi, h[i]);
    return d;
}

}  // namespace

Mat layer_jacobian(const Network& net, const LayerState& state, int l, JacobianForm form) {
    const int L = net.spec.L;
    if (static_cast<int>(state.h.size()) != L)
        throw shape_error("layer_jacobian: state does not match network depth");
    if (form == JacobianForm::DW) {
        if (l < 1 || l > L) throw index_error("layer_jacobian: DW form requires l in [1, L]");
        return dphi_at_layer(net, state, l).asDiagonal() * net.weights[l - 1];
    }
    if (l < 1 || l > L - 1) throw index_error("layer_jacobian: WD form requires l in [1, L-1]");
    return net.weights[l] * dphi_at_layer(net, state, l).asDiagonal();
}

Mat full_jacobian(const Network& net, const LayerState& state) {
    Mat j = layer_jacobian(net, state, 1, JacobianForm::DW);
    for (int l = 2; l <= net.spec.L; ++l)
        j = layer_jacobian(net, state, l, JacobianForm::DW) * j;
    return j;
}

}  // namespace levynet::network
