#include "tlab/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tlab {

bool in_unit_disk(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag()) &&
           std::abs(z) < 1.0 - kDiskMargin;
}

void require_in_unit_disk(Complex z, const char* who) {
    if (!in_unit_disk(z)) {
        std::ostringstream msg;
        msg << who << ": point (" << z.real() << ", " << z.imag()
            << ") is not inside the open unit disk (|z| < 1 - 1e-12 required)";
        throw std::domain_error(msg.str());
    }
}

Complex mobius_transform(Complex a, Complex z) {
    require_in_unit_disk(a, "mobius_transform");
    require_in_unit_disk(z, "mobius_transform");
    return (a - z) / (1.0 - std::conj(a) * z);
}

double rho(Complex z, Complex w) {
    require_in_unit_disk(z, "rho");
    require_in_unit_disk(w, "rho");
    return std::abs((w - z) / (1.0 - std::conj(w) * z));
}

double beta(Complex z, Complex w) { return std::atanh(rho(z, w)); }

bool PseudoDisk::contains(Complex w) const {
    if (!in_unit_disk(w)) return false;
    return rho(center, w) < radius;
}

PseudoDisk pseudo_disk(Complex z, double r) {
    require_in_unit_disk(z, "pseudo_disk");
    if (!(r > 0.0) || !(r < 1.0)) {
        std::ostringstream msg;
        msg << "pseudo_disk: radius " << r << " outside (0, 1)";
        throw std::domain_error(msg.str());
    }
    const double zz = std::norm(z);
    const double denom = 1.0 - r * r * zz;
    PseudoDisk d;
    d.center = z;
    d.radius = r;
    d.center_euclidean = (1.0 - r * r) * z / denom;
    d.radius_euclidean = r * (1.0 - zz) / denom;
    d.area = d.radius_euclidean * d.radius_euclidean;
    return d;
}

PseudoDisk hyperbolic_disk(Complex z, double R) {
    if (!(R > 0.0) || !std::isfinite(R)) {
        std::ostringstream msg;
        msg << "hyperbolic_disk: beta radius " << R << " must be positive and finite";
        throw std::domain_error(msg.str());
    }
    return pseudo_disk(z, std::tanh(R));
}

}  // namespace tlab
