#include "dphh/laplace.hpp"

#include <cmath>

#include "dphh/errors.hpp"

namespace dphh {

double laplace_inverse_cdf(double u, double scale) noexcept {
    const double centered = u - 0.5;
    if (centered == 0.0) return 0.0;
    const double magnitude = -scale * std::log1p(-2.0 * std::abs(centered));
    return centered > 0 ? magnitude : -magnitude;
}

double NoiseSource::laplace(double scale) noexcept {
    if (forced_) return *forced_;
    return laplace_inverse_cdf(uniform_open(), scale);
}

double sample_laplace(double scale, NoiseSource& noise) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InvalidParameter("Laplace scale must be positive and finite");
    }
    return noise.laplace(scale);
}

}  // namespace dphh
