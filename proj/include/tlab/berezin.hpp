#pragma once

// Reproducing kernels, Berezin transforms, their grid extrema, and the
// Carleson tail functionals.
//
// Kernels.  Bergman: K_z(w) = 1/(1 - conj(z) w)^2, normalized
// k_z(w) = (1 - |z|^2) / (1 - conj(z) w)^2.  Fock: K_z(w) = exp(conj(z) w / 2),
// normalized k_z(w) = exp(conj(z) w / 2 - |z|^2 / 4).  Both normalized
// kernels have unit norm in their space.
//
// Berezin transform mu~(z) = I |k_z(w)|^2 dmu(w) (Bergman), and
// mu~(z) = (1/2) I exp(-|z - w|^2 / 2) dmu(w) (Fock).  Atomic measures sum
// the closed forms exactly.  Bergman densities integrate through the Mobius
// substitution w = phi_z(u): the Jacobian identity
// |k_z(phi_z(u))|^2 |phi_z'(u)|^2 = 1 turns the peaked kernel integral into
// I g(phi_z(u)) dA(u), which is uniformly well conditioned in z.  Fock
// densities integrate over the plane centered at z (the integrand carries
// the explicit Gaussian e^{-|z-w|^2/2}, whose finiteness at z is exactly
// condition (M) there, up to the factor e^{-|z|^2/2}/2).  Pull-back measures
// evaluate I |k_z(phi(w))|^2 dA(w).
//
// Tail functionals.  Bergman: I_{D \ E(z,r)} |k_z|^2 dmu; under the same
// substitution an absolutely continuous tail becomes the annulus integral
// I_{r<|u|<1} g(phi_z(u)) dA(u), exact 1 - r^2 for dA.  Fock:
// I_{C \ B(z,R)} e^{-|z-w|^2/2} dmu (no 1/2 prefactor), exact 2 e^{-R^2/2}
// for dA.
//
// Grid reports.  Extrema are evaluated over a polar grid (Bergman: radii
// uniform in beta up to the requested rho, plus the center) or a rectangle
// grid (Fock).  For truncated atomic measures the region must keep a full
// metric neighborhood inside the truncation window — the certified covering
// radius for Bergman ring lattices, a 5-unit Gaussian reach for Fock
// windows — so truncation artifacts cannot masquerade as unboundedness.

#include <vector>

#include "tlab/measure.hpp"

namespace tlab {

Complex kernel(Space space, Complex z, Complex w, bool normalized);

double berezin_transform(const Measure& mu, Complex z, const QuadratureSpec& spec = {});

// Evaluation region for grid reports: exactly one of the two shapes.
struct GridRegion {
    double rho_max = 0.0;        // Bergman: closed disk rho(0, z) <= rho_max
    Complex lo{0.0, 0.0};        // Fock: closed rectangle [lo.re, hi.re] x
    Complex hi{0.0, 0.0};        //       [lo.im, hi.im]
    bool fock_rect = false;

    static GridRegion bergman_disk(double rho_max);
    static GridRegion fock_rectangle(Complex lo, Complex hi);
};

struct GridSample {
    Complex z;
    double value = 0.0;
};

struct GridReport {
    GridRegion region;
    int radial = 0, angular = 0;  // Bergman grid shape (plus center sample)
    int nx = 0, ny = 0;           // Fock grid shape
    double inf_value = 0.0, sup_value = 0.0;
    Complex argmin{0.0, 0.0}, argmax{0.0, 0.0};
    std::vector<GridSample> samples;  // full sweep, row-major
};

// Extrema of the Berezin transform over the region.  grid_density sets the
// angular count (Bergman; radial = half of it) or the per-axis count (Fock);
// 0 means the defaults 128 x 64 and 101 x 101.  Throws std::invalid_argument
// when the region violates the truncation margin rule described above.
GridReport berezin_extrema(const Measure& mu, const GridRegion& region, int grid_density = 0,
                           const QuadratureSpec& spec = {});

// Tail functionals at a single point.
double tail_bergman(const Measure& mu, Complex z, double r, const QuadratureSpec& spec = {});
double tail_fock(const Measure& mu, Complex z, double R, const QuadratureSpec& spec = {});

// Grid sweeps of the tail functionals (same region/margin rules as
// berezin_extrema; the sup and argmax are the quantities of interest).
GridReport tail_sup_bergman(const Measure& mu, double r, const GridRegion& region,
                            int grid_density = 0, const QuadratureSpec& spec = {});
GridReport tail_sup_fock(const Measure& mu, double R, const GridRegion& region,
                         int grid_density = 0, const QuadratureSpec& spec = {});

// Sweep of an arbitrary pointwise functional of the measure under the same
// grid shapes and truncation-margin rules; the Carleson module reduces its
// mass quotients through this.
GridReport functional_sweep(const Measure& mu, const GridRegion& region, int grid_density,
                            const std::function<double(Complex)>& f);

}  // namespace tlab
