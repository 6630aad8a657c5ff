#pragma once

// Deterministic quadrature over the unit disk and the plane, plus a seeded
// Monte Carlo oracle used to cross-check every closed form in the library.
//
// All integrals are against normalized area measure dA = (Lebesgue area)/pi,
// so the unit disk has dA-measure 1.  Polar coordinates are substituted with
// t = r^2, which turns monomials z^m conj(z)^n into polynomials in t:
//
//     I f dA = (1/(2 pi)) I_0^{2pi} I_{t0}^{t1} f(sqrt(t) e^{i theta}) dt dtheta
//
// so Gauss-Legendre in t is polynomial-exact (including the area element) and
// the uniform angular rule annihilates every harmonic e^{i k theta} whose
// order k is not a multiple of the angular node count.
//
// Plane integrals of Gaussian-decaying integrands are truncated to a disk
// B(center, outer_radius) and computed with composite Gauss-Legendre panels
// in t sized to the declared decay rate; the a-priori tail bound
// exp(-c R^2)/c for |f| <= exp(-c |w - center|^2) is validated and reported.

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "tlab/geometry.hpp"

namespace tlab {

struct QuadratureSpec {
    int radial_nodes = 64;
    int angular_nodes = 256;
    double tolerance = 1e-10;
    // Truncation radius for plane integrals; 0 means "derive from the decay
    // rate": outer_radius = sqrt(2 log(1/tolerance) / decay).
    double outer_radius = 0.0;
};

struct Integral {
    Complex value{};
    double doubling_delta = 0.0;   // |value - value at half the nodes|
    bool accuracy_warning = false; // doubling_delta >= tolerance
    double tail_bound = 0.0;       // plane integrals: a-priori Gaussian tail

    double real() const { return value.real(); }
};

using Integrand = std::function<Complex(Complex)>;

// Gauss-Legendre nodes/weights on [0, 1] (sum of weights = 1 ... times 1).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n);

// Explicit node/weight sets: integral ~ sum w_i f(z_i).  These are the same
// rules the integrate_* wrappers use; matrix assembly iterates them directly.
struct QuadNode {
    Complex z;
    double w = 0.0;
};

// Unit disk, optionally only the annulus { inner_rho < |z| < 1 }.
std::vector<QuadNode> disk_rule(const QuadratureSpec& spec, double inner_rho = 0.0);

// Disk B(center, outer_radius) minus B(center, inner_radius), composite
// panels in t sized to the decay rate (panel span ~ 4/decay in t).
std::vector<QuadNode> plane_rule(Complex center, double inner_radius,
                                 double outer_radius, double decay,
                                 const QuadratureSpec& spec);

// I_D f dA with a node-doubling accuracy check.
Integral integrate_disk(const Integrand& f, const QuadratureSpec& spec = {});

// I_{inner_rho < |z| < 1} f dA.
Integral integrate_disk_annulus(const Integrand& f, double inner_rho,
                                const QuadratureSpec& spec = {});

// I_{B(c, R)} f dA = R^2 I_D f(c + R u) dA(u).
Integral integrate_euclidean_disk(const Integrand& f, const EuclideanDisk& disk,
                                  const QuadratureSpec& spec = {});

// I_C f dA truncated to B(center, outer_radius).  `decay` is the caller's
// declared Gaussian rate c with |f(w)| <~ exp(-c |w - center|^2); an
// outer_radius too small for the declared decay at the spec tolerance is
// rejected (std::invalid_argument).
Integral integrate_plane_gaussian(const Integrand& f, Complex center, double decay,
                                  const QuadratureSpec& spec = {});

// Same, over { |w - center| > inner_radius } (truncated outer annulus).
Integral integrate_plane_annulus(const Integrand& f, Complex center,
                                 double inner_radius, double decay,
                                 const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Monte Carlo oracle.

struct McSpec {
    std::uint64_t seed = 42;
    std::size_t samples = 1000000;
};

struct McEstimate {
    Complex estimate{};
    double std_error = 0.0;
};

// Sampling region: always an honest Euclidean disk (a PseudoDisk is sampled
// through its Euclidean realization, which is the same point set).
struct McRegion {
    EuclideanDisk disk;

    static McRegion unit_disk() { return {{Complex(0.0, 0.0), 1.0}}; }
    static McRegion euclidean(const EuclideanDisk& d) { return {d}; }
    static McRegion pseudo(const PseudoDisk& d) { return {d.euclidean()}; }
};

// Uniform-sampling estimate of I_region f dA.  Identical McSpec (seed,
// samples) gives bit-identical results; the stream is a single mt19937_64
// with 53-bit uniforms drawn straight from the raw generator output.
McEstimate mc_oracle(const Integrand& f, const McRegion& region,
                     const McSpec& spec = {});

}  // namespace tlab
