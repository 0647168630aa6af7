#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "levynet/errors.hpp"

namespace levynet {

/// Element-wise activations with analytic derivatives. Only sublinear
/// activations (phi(|x|) = o(|x|)) keep the mean-field map finite; tanh is the
/// default and the one exercised by the test suite.
enum class Activation { Tanh };

inline double phi(Activation a, double x) {
    switch (a) {
        case Activation::Tanh:
            return std::tanh(x);
    }
    return 0.0;
}

inline double phi_prime(Activation a, double x) {
    switch (a) {
        case Activation::Tanh: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
    }
    return 0.0;
}

/// Saturation value lim_{x->inf} |phi(x)|.
inline double phi_saturation(Activation a) {
    switch (a) {
        case Activation::Tanh:
            return 1.0;
    }
    return 0.0;
}

inline std::string activation_name(Activation a) {
    switch (a) {
        case Activation::Tanh:
            return "tanh";
    }
    return "?";
}

inline Activation parse_activation(std::string_view name) {
    if (name == "tanh") return Activation::Tanh;
    throw domain_error("unknown activation: " + std::string(name));
}

}  // namespace levynet
