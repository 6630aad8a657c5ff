#pragma once

// Finite point configurations and their certificates.
//
// Square lattices on the plane (Fock space):  points r(m + i n) for
// |m|, |n| <= M.  Separation r and covering radius r/sqrt(2) over the closed
// window [-Mr, Mr]^2 are exact (the worst point of a cell is its center, and
// the window boundary consists of lattice points).
//
// Hyperbolic lattices in the unit disk (Bergman space): concentric rings
// j = 0 .. max_rings-1 at beta-radius s_j = j R/2, where
// beta(z, w) = (1/2) log((1+rho)/(1-rho)) and rho is the pseudo-hyperbolic
// metric.  Ring j carries
//
//     n_j = max(1, floor(2 pi / dtheta_j)),
//     cos(dtheta_j) = 1 - (cosh R - 1) / sinh^2(j R),
//
// equally spaced points, with the angular offset alternating by half a step
// between consecutive rings.  The count n_j is the largest equal spacing
// whose within-ring chord still measures >= R/2 in beta: two points at
// beta-radius s and angular separation t are at distance
//
//     beta = (1/2) arccosh( cosh^2(2s) - sinh^2(2s) cos t )
//
// by the hyperbolic law of cosines in the curvature -1 metric 2*beta, and
// dtheta_j solves beta = R/2 at s = s_j.  Radially, consecutive rings differ
// by R/2 in beta, so the whole sequence is R/2-separated by construction.
// The constructor nevertheless certifies both constants and throws if either
// certificate fails:
//
//   * separation: exact minimum over all ring pairs.  For rings a, b the
//     smallest angular gap between their angular grids is
//     pi * m / (n_a n_b) with m = min |c mod 2g|, g = gcd(n_a, n_b) and
//     c the integer offset difference, so the minimum over the full point
//     set reduces to one chord evaluation per ring pair.
//   * covering: the maximum over a polar grid of the region
//     { beta(0, z) <= max_rings * R/2 - R } of the distance to the nearest
//     lattice point, plus the rigorous discretization term
//     h_beta / 2 + dtheta * sinh(2 s_max) / 4  (radial half-step along a
//     geodesic plus angular half-step along the worst circle).  The sum is
//     a certified upper bound for the true covering radius; it must not
//     exceed R.
//
// Distances are reported in the metric native to the space: pseudo-
// hyperbolic rho on the disk (rho = tanh beta), Euclidean on the plane.

#include <vector>

#include "tlab/geometry.hpp"
#include "tlab/measure.hpp"

namespace tlab {

enum class Metric { rho, euclidean };

const char* to_string(Metric m);

struct Ring {
    double beta_radius = 0.0;
    int count = 0;
    double angular_offset = 0.0;  // fraction of the angular step, in [0, 1)
};

// Region over which a covering radius is certified.  Bergman sequences use
// the beta-ball { beta(0, z) <= beta_radius }; Fock sequences use the square
// [-half_side, half_side]^2.  A default-constructed region means "none".
struct CoverageRegion {
    double beta_radius = 0.0;
    double half_side = 0.0;

    bool empty() const { return beta_radius <= 0.0 && half_side <= 0.0; }
};

struct PointSequence {
    Space space = Space::bergman;
    Metric metric = Metric::rho;
    std::vector<Complex> points;

    // Certified constants in the native metric.  covering_radius is the
    // measured grid supremum over `region`; covering_bound adds the
    // discretization term and is the sound upper bound.
    double separation = 0.0;
    double covering_radius = 0.0;
    double covering_bound = 0.0;
    CoverageRegion region;
    bool certified = false;

    // Construction metadata (zero / empty when not applicable).
    double spacing = 0.0;         // square lattice spacing r
    int window = 0;               // square lattice half-extent M
    double ring_parameter = 0.0;  // hyperbolic lattice R
    std::vector<Ring> rings;
    double beta_separation = 0.0;  // hyperbolic certificates in the beta metric
    double beta_covering = 0.0;
    double beta_covering_bound = 0.0;
};

// Square lattice { r(m + i n) : |m|, |n| <= M } on the plane.
// Throws std::invalid_argument for r <= 0 or M < 1.
PointSequence square_lattice(double r, int window);

// Ring-based hyperbolic lattice as described above.  Throws
// std::invalid_argument for bad parameters and std::runtime_error (naming
// the violating pair or gap) if certification fails.  When
// max_rings * R/2 - R <= 0 the coverage region is empty and only the
// separation certificate applies.
PointSequence hyperbolic_lattice(double R, int max_rings);

// Exact minimum pairwise distance in the sequence's native metric.  Uses the
// ring-pair closed form for hyperbolic lattices and the spacing for square
// lattices; ad-hoc sequences are scanned pairwise.  Throws
// std::invalid_argument for fewer than two points.
double separation_constant(const PointSequence& seq);

struct NetCheck {
    bool is_net = false;
    double covering_radius = 0.0;  // measured grid supremum, native metric
    double grid_bound = 0.0;       // additive discretization term
    double covering_upper = 0.0;   // covering_radius + grid_bound
};

// Covering check over `region`: covering_radius = max over a dense grid of
// the distance to the nearest sequence point; is_net = (covering_radius <=
// radius).  `radius` and the result are in the native metric.  grid_density
// overrides the number of angular (Bergman) or per-axis (Fock) grid lines;
// 0 picks a density that keeps the discretization term below radius/60.
// The region must match the space and may not exceed the sequence's stated
// coverage region when one exists (a finite truncation cannot certify a
// larger net).
NetCheck net_check(const PointSequence& seq, double radius, const CoverageRegion& region,
                   int grid_density = 0);

// Sufficient condition for sampling: certified separation > 0 and certified
// rho-covering bound < 1/2 over the stated region.  Bergman sequences with a
// covering certificate only; throws std::invalid_argument otherwise.
bool sampling_sufficient(const PointSequence& seq);

// Sufficient condition for interpolation at separation delta:
//     (2 pi + 1) sqrt(1 - delta) / (1 - sqrt(1 - delta))^2 < 1/2.
// The functional is strictly decreasing in delta, so the condition holds
// exactly above the threshold delta* (root of t^2 - (4 pi + 4) t + 1 via
// t = sqrt(1 - delta*)), approximately 0.9963296.
double interpolation_functional(double delta);
double interpolation_threshold();
bool interpolation_sufficient(const PointSequence& seq);  // Bergman only

// Atomic Bergman measure sum_k (1 - |b_k|^2)^2 delta_{b_k} over
// hyperbolic_lattice(R, max_rings), with truncation metadata wired for the
// grid-report margin rules.
Measure counterexample_bergman(double R, int max_rings);

// Atomic Fock measure with unit weights on square_lattice(r, window).
// Requires r >= sqrt(2 pi); smaller spacings are rejected because the
// induced Toeplitz operator is invertible below that threshold and the
// configuration would not be a counterexample.
Measure counterexample_fock(double r, int window);

}  // namespace tlab
