#pragma once

// Hyperbolic geometry of the open unit disk D.
//
// The basic involution is the Mobius transform
//
//     phi_a(z) = (a - z) / (1 - conj(a) z),        phi_a(phi_a(z)) = z,
//
// which exchanges 0 and a.  From it we get the pseudo-hyperbolic metric
//
//     rho(z, w)  = |phi_w(z)|             in [0, 1),
//     beta(z, w) = atanh(rho(z, w))       the Bergman (hyperbolic) distance,
//
// and the pseudo-hyperbolic disk E(z, r) = { w : rho(z, w) < r }.  E(z, r)
// is an honest Euclidean disk with
//
//     center = (1 - r^2) z / (1 - r^2 |z|^2),
//     radius = r (1 - |z|^2) / (1 - r^2 |z|^2),
//
// and normalized area (dA = Lebesgue/pi, so A(D) = 1)
//
//     A(E(z, r)) = r^2 (1 - |z|^2)^2 / (1 - r^2 |z|^2)^2.
//
// The hyperbolic disk of beta-radius R is D(z, R) = E(z, tanh R).

#include <complex>

namespace tlab {

using Complex = std::complex<double>;

// Points with |z| >= 1 - kDiskMargin are rejected by Bergman-space operations;
// the disk is open and kernel denominators degenerate at the boundary.
inline constexpr double kDiskMargin = 1e-12;

// True iff z is usable as a Bergman-space point.
bool in_unit_disk(Complex z);

// Throws std::domain_error (message names the offending value) otherwise.
void require_in_unit_disk(Complex z, const char* who);

// phi_a(z) = (a - z)/(1 - conj(a) z).  Both arguments must lie in D.
Complex mobius_transform(Complex a, Complex z);

// Pseudo-hyperbolic distance rho(z, w) = |phi_w(z)|, a metric on D.
double rho(Complex z, Complex w);

// Bergman distance beta(z, w) = atanh(rho(z, w)).
double beta(Complex z, Complex w);

// Euclidean disk { w : |w - center| < radius }.
struct EuclideanDisk {
    Complex center;
    double radius = 0.0;

    bool contains(Complex w) const { return std::abs(w - center) < radius; }
    // Normalized area (Lebesgue / pi).
    double area() const { return radius * radius; }
};

// Pseudo-hyperbolic disk E(z, r) together with its Euclidean realization.
struct PseudoDisk {
    Complex center;            // hyperbolic center z
    double radius = 0.0;       // pseudo-hyperbolic radius r in (0, 1)
    Complex center_euclidean;  // Euclidean center of the same point set
    double radius_euclidean = 0.0;
    double area = 0.0;         // normalized area of the Euclidean disk

    bool contains(Complex w) const;  // rho(center, w) < radius
    EuclideanDisk euclidean() const { return {center_euclidean, radius_euclidean}; }
};

// E(z, r).  Requires z in D and r in (0, 1).
PseudoDisk pseudo_disk(Complex z, double r);

// D(z, R) = E(z, tanh R), the hyperbolic (beta) disk of radius R > 0.
PseudoDisk hyperbolic_disk(Complex z, double R);

}  // namespace tlab
