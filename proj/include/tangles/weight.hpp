#pragma once

#include <cmath>
#include <stdexcept>

namespace tangles {

// Edge weight model: delta-neighborhood (unit weight within distance delta)
// or Gaussian kernel with bandwidth c.
struct WeightModel {
    enum class Kind { DeltaNeighborhood, GaussianKernel };
    Kind kind = Kind::DeltaNeighborhood;
    double parameter = 1.0;  // delta, or kernel bandwidth c

    static WeightModel delta(double d) {
        if (!(d > 0.0)) throw std::invalid_argument("WeightModel: delta must be positive");
        return {Kind::DeltaNeighborhood, d};
    }
    static WeightModel kernel(double c) {
        if (!(c > 0.0)) throw std::invalid_argument("WeightModel: bandwidth must be positive");
        return {Kind::GaussianKernel, c};
    }

    double weight_sq(double dist_sq) const {
        if (kind == Kind::DeltaNeighborhood)
            return dist_sq <= parameter * parameter ? 1.0 : 0.0;
        return std::exp(-dist_sq / (2.0 * parameter * parameter));
    }
};

}  // namespace tangles
