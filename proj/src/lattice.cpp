#include "tlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tlab {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCertSlack = 1e-9;  // one-sided certificate tolerance

std::string format_msg(const char* pattern, double a, double b) {
    char buf[192];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

// beta-distance between disk points at beta-radii s1, s2 from the origin and
// angular gap delta, via the hyperbolic law of cosines in the curvature -1
// metric 2*beta:  cosh d - 1 = 2 sinh^2(s1 - s2)
//                            + 2 sinh(2 s1) sinh(2 s2) sin^2(delta / 2).
// The right-hand side is evaluated without cancellation, so the result is
// accurate even for nearly coincident points.
double beta_chord(double s1, double s2, double delta) {
    const double ds = std::sinh(s1 - s2);
    const double sd = std::sin(0.5 * delta);
    const double m =
        2.0 * ds * ds + 2.0 * std::sinh(2.0 * s1) * std::sinh(2.0 * s2) * sd * sd;
    return 0.5 * std::log1p(m + std::sqrt(m * (m + 2.0)));
}

// Largest equal-spacing count on ring j whose within-ring chord is >= R/2 in
// beta.  1 - cos(dtheta) = (cosh R - 1) / sinh^2(j R) is solved through
// sin(dtheta/2) to avoid the cancellation in acos near 1.
int ring_count(double R, int j) {
    if (j == 0) return 1;
    const double sh = std::sinh(j * R);
    const double x = (std::cosh(R) - 1.0) / (sh * sh);
    if (x >= 2.0) return 1;
    const double dtheta = 2.0 * std::asin(std::sqrt(0.5 * x));
    return std::max(1, static_cast<int>(std::floor(2.0 * kPi / dtheta)));
}

// Smallest angular gap between the angular grids of two distinct rings.
// Ring angles are 2 pi (k + o)/n with offsets o in {0, 1/2}; writing
// e = 2o in {0, 1}, the gaps are pi [(2k + e_a) n_b - (2k' + e_b) n_a] /
// (n_a n_b), and the bracket ranges over the residue class
// e_a n_b - e_b n_a  (mod 2 gcd(n_a, n_b)).
double min_angular_gap(const Ring& a, const Ring& b) {
    const std::int64_t na = a.count, nb = b.count;
    const std::int64_t ea = std::llround(2.0 * a.angular_offset);
    const std::int64_t eb = std::llround(2.0 * b.angular_offset);
    const std::int64_t mod = 2 * std::gcd(na, nb);
    const std::int64_t c = (((ea * nb - eb * na) % mod) + mod) % mod;
    const std::int64_t m = std::min(c, mod - c);
    return kPi * static_cast<double>(m) / (static_cast<double>(na) * static_cast<double>(nb));
}

// Exact minimum beta-distance over all point pairs of a ring lattice: the
// chord is monotone in the angular gap, so each ring pair contributes one
// evaluation at its minimal gap (the within-ring minimum sits at one step).
struct SeparationResult {
    double beta = std::numeric_limits<double>::infinity();
    int ring_a = -1, ring_b = -1;
};

SeparationResult ring_separation(const std::vector<Ring>& rings) {
    SeparationResult out;
    for (std::size_t a = 0; a < rings.size(); ++a) {
        if (rings[a].count >= 2) {
            const double d = beta_chord(rings[a].beta_radius, rings[a].beta_radius,
                                        2.0 * kPi / rings[a].count);
            if (d < out.beta) out = {d, static_cast<int>(a), static_cast<int>(a)};
        }
        for (std::size_t b = a + 1; b < rings.size(); ++b) {
            const double d = beta_chord(rings[a].beta_radius, rings[b].beta_radius,
                                        min_angular_gap(rings[a], rings[b]));
            if (d < out.beta) out = {d, static_cast<int>(a), static_cast<int>(b)};
        }
    }
    return out;
}

struct SweepResult {
    double measured = 0.0;  // grid supremum of the nearest-distance, in beta
    double bound = 0.0;     // rigorous discretization term, in beta
    Complex worst{0.0, 0.0};
};

// Supremum over a polar grid of { beta(0,.) <= s_max } of the beta-distance
// to the nearest sequence point.  Ring lattices use the per-ring closed form
// with the nearest angular index; other sequences are scanned directly.
SweepResult polar_sweep(const PointSequence& seq, double s_max, int n_theta, int n_rad) {
    SweepResult out;
    out.bound = 0.5 * s_max / n_rad + 0.25 * (2.0 * kPi / n_theta) * std::sinh(2.0 * s_max);

    struct RingSlot {  // per-ring terms at a fixed grid radius
        double radial;  // 2 sinh^2(s_p - s_j)
        double cross;   // 2 sinh(2 s_p) sinh(2 s_j)
        double gap;     // |s_p - s_j|: lower bound for any distance to the ring
        int count;
        double offset;
    };
    std::vector<RingSlot> slots(seq.rings.size());

    for (int i = 0; i <= n_rad; ++i) {
        const double sp = s_max * i / n_rad;
        if (!seq.rings.empty()) {
            for (std::size_t j = 0; j < seq.rings.size(); ++j) {
                const Ring& ring = seq.rings[j];
                const double ds = std::sinh(sp - ring.beta_radius);
                slots[j] = {2.0 * ds * ds,
                            2.0 * std::sinh(2.0 * sp) * std::sinh(2.0 * ring.beta_radius),
                            std::abs(sp - ring.beta_radius), ring.count, ring.angular_offset};
            }
            std::sort(slots.begin(), slots.end(),
                      [](const RingSlot& x, const RingSlot& y) { return x.gap < y.gap; });
        }
        const double rho_p = std::tanh(sp);
        for (int t = 0; t < n_theta; ++t) {
            const double theta = 2.0 * kPi * t / n_theta;
            double dmin = std::numeric_limits<double>::infinity();
            if (!seq.rings.empty()) {
                for (const RingSlot& slot : slots) {
                    if (slot.gap >= dmin) break;  // sorted: no later ring can improve
                    const double frac = theta * slot.count / (2.0 * kPi) - slot.offset;
                    const double delta =
                        (frac - std::round(frac)) * 2.0 * kPi / slot.count;
                    const double sd = std::sin(0.5 * delta);
                    const double m = slot.radial + slot.cross * sd * sd;
                    dmin = std::min(dmin, 0.5 * std::log1p(m + std::sqrt(m * (m + 2.0))));
                    if (dmin <= out.measured) break;  // cannot raise the supremum
                }
            } else {
                const Complex z(rho_p * std::cos(theta), rho_p * std::sin(theta));
                for (const Complex& p : seq.points) {
                    dmin = std::min(dmin, std::atanh(rho(z, p)));
                    if (dmin <= out.measured) break;
                }
            }
            if (dmin > out.measured) {
                out.measured = dmin;
                out.worst = Complex(rho_p * std::cos(theta), rho_p * std::sin(theta));
            }
        }
    }
    return out;
}

void auto_polar_grid(double radius_beta, double s_max, int grid_density, int& n_theta,
                     int& n_rad) {
    if (grid_density > 0) {
        n_theta = std::max(8, grid_density);
        n_rad = std::max(8, grid_density / 16);
        return;
    }
    const double target = radius_beta / 60.0;  // split across the two bound terms
    n_rad = std::max(8, static_cast<int>(std::ceil(s_max / target)));
    const double dtheta = target / (0.5 * std::sinh(2.0 * s_max));
    n_theta = std::clamp(static_cast<int>(std::ceil(2.0 * kPi / dtheta)), 64, 4000000);
}

void certify_hyperbolic(PointSequence& seq) {
    const double R = seq.ring_parameter;
    if (seq.points.size() >= 2) {
        const SeparationResult sep = ring_separation(seq.rings);
        seq.beta_separation = sep.beta;
        seq.separation = std::tanh(sep.beta);
        if (!(sep.beta >= 0.5 * R * (1.0 - 1e-12) - kCertSlack)) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "hyperbolic lattice separation certificate failed: rings %d and %d "
                          "at beta = %.12g < %.12g",
                          sep.ring_a, sep.ring_b, sep.beta, 0.5 * R);
            throw std::runtime_error(buf);
        }
    }
    if (seq.region.beta_radius > 0.0) {
        int n_theta = 0, n_rad = 0;
        auto_polar_grid(R, seq.region.beta_radius, 0, n_theta, n_rad);
        const SweepResult sweep = polar_sweep(seq, seq.region.beta_radius, n_theta, n_rad);
        seq.beta_covering = sweep.measured;
        seq.beta_covering_bound = sweep.measured + sweep.bound;
        seq.covering_radius = std::tanh(seq.beta_covering);
        seq.covering_bound = std::tanh(seq.beta_covering_bound);
        if (!(seq.beta_covering_bound <= R + kCertSlack)) {
            char buf[192];
            std::snprintf(buf, sizeof buf,
                          "hyperbolic lattice covering certificate failed: gap %.12g "
                          "(+ grid bound %.12g) at (%.12g, %.12g) exceeds %.12g",
                          sweep.measured, sweep.bound, sweep.worst.real(), sweep.worst.imag(),
                          R);
            throw std::runtime_error(buf);
        }
    }
    seq.certified = true;
}

}  // namespace

const char* to_string(Metric m) { return m == Metric::rho ? "rho" : "euclidean"; }

PointSequence square_lattice(double r, int window) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument(format_msg("square lattice spacing must be positive, got %g", r, 0));
    if (window < 1)
        throw std::invalid_argument(
            format_msg("square lattice window must be >= 1, got %g", static_cast<double>(window), 0));
    PointSequence seq;
    seq.space = Space::fock;
    seq.metric = Metric::euclidean;
    seq.spacing = r;
    seq.window = window;
    seq.points.reserve(static_cast<std::size_t>(2 * window + 1) * (2 * window + 1));
    for (int m = -window; m <= window; ++m)
        for (int n = -window; n <= window; ++n) seq.points.emplace_back(r * m, r * n);
    seq.separation = r;
    // Exact: the farthest point of any cell is its center, at r/sqrt(2); the
    // boundary of the closed window consists of lattice points.
    seq.covering_radius = r * std::sqrt(0.5);
    seq.covering_bound = seq.covering_radius;
    seq.region.half_side = window * r;
    seq.certified = true;
    return seq;
}

PointSequence hyperbolic_lattice(double R, int max_rings) {
    if (!(R > 0.0) || !std::isfinite(R))
        throw std::invalid_argument(format_msg("lattice parameter R must be positive, got %g", R, 0));
    if (max_rings < 1)
        throw std::invalid_argument(format_msg("max_rings must be >= 1, got %g",
                                               static_cast<double>(max_rings), 0));
    PointSequence seq;
    seq.space = Space::bergman;
    seq.metric = Metric::rho;
    seq.ring_parameter = R;
    for (int j = 0; j < max_rings; ++j) {
        Ring ring;
        ring.beta_radius = 0.5 * j * R;
        ring.count = ring_count(R, j);
        ring.angular_offset = (j % 2 == 1) ? 0.5 : 0.0;
        const double radius = std::tanh(ring.beta_radius);
        seq.points.reserve(seq.points.size() + ring.count);
        for (int k = 0; k < ring.count; ++k) {
            const double theta = 2.0 * kPi * (k + ring.angular_offset) / ring.count;
            seq.points.emplace_back(radius * std::cos(theta), radius * std::sin(theta));
        }
        seq.rings.push_back(ring);
    }
    seq.region.beta_radius = std::max(0.0, 0.5 * max_rings * R - R);
    certify_hyperbolic(seq);
    return seq;
}

double separation_constant(const PointSequence& seq) {
    if (seq.points.size() < 2)
        throw std::invalid_argument("separation constant needs at least two points");
    if (!seq.rings.empty()) return std::tanh(ring_separation(seq.rings).beta);
    if (seq.spacing > 0.0) return seq.spacing;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < seq.points.size(); ++i)
        for (std::size_t j = i + 1; j < seq.points.size(); ++j)
            best = std::min(best, seq.metric == Metric::rho
                                      ? rho(seq.points[i], seq.points[j])
                                      : std::abs(seq.points[i] - seq.points[j]));
    return best;
}

NetCheck net_check(const PointSequence& seq, double radius, const CoverageRegion& region,
                   int grid_density) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument(format_msg("net radius must be positive, got %g", radius, 0));
    if (seq.points.empty()) throw std::invalid_argument("net check needs a nonempty sequence");

    NetCheck out;
    if (seq.space == Space::bergman) {
        if (!(region.beta_radius > 0.0) || region.half_side != 0.0)
            throw std::invalid_argument("Bergman net check needs a beta-ball region");
        if (!(radius < 1.0))
            throw std::invalid_argument(
                format_msg("Bergman net radius is a rho distance and must be < 1, got %g", radius, 0));
        if (!seq.region.empty() && region.beta_radius > seq.region.beta_radius + 1e-12)
            throw std::invalid_argument(format_msg(
                "requested region beta <= %g exceeds the certified window beta <= %g",
                region.beta_radius, seq.region.beta_radius));
        const double radius_beta = std::atanh(radius);
        int n_theta = 0, n_rad = 0;
        auto_polar_grid(radius_beta, region.beta_radius, grid_density, n_theta, n_rad);
        const SweepResult sweep = polar_sweep(seq, region.beta_radius, n_theta, n_rad);
        out.covering_radius = std::tanh(sweep.measured);
        out.covering_upper = std::tanh(sweep.measured + sweep.bound);
        out.grid_bound = out.covering_upper - out.covering_radius;
    } else {
        if (!(region.half_side > 0.0) || region.beta_radius != 0.0)
            throw std::invalid_argument("Fock net check needs a square region");
        if (!seq.region.empty() && region.half_side > seq.region.half_side + 1e-12)
            throw std::invalid_argument(format_msg(
                "requested region half-side %g exceeds the truncation window half-side %g",
                region.half_side, seq.region.half_side));
        const double hs = region.half_side;
        int n = grid_density > 0 ? std::max(2, grid_density)
                                 : std::max(2, static_cast<int>(std::ceil(
                                                   2.0 * hs / (radius * std::sqrt(2.0) / 120.0))) +
                                                   1);
        const double h = 2.0 * hs / (n - 1);
        const bool on_lattice = seq.spacing > 0.0 && seq.window > 0;
        double sup = 0.0;
        Complex worst(0, 0);
        for (int i = 0; i < n; ++i) {
            const double x = -hs + h * i;
            for (int j = 0; j < n; ++j) {
                const Complex z(x, -hs + h * j);
                double dmin = std::numeric_limits<double>::infinity();
                if (on_lattice) {
                    // Componentwise clamp of the rounded index is the nearest
                    // point of the truncated lattice (the window is a box).
                    const double mw = static_cast<double>(seq.window);
                    const double px =
                        std::clamp(std::round(z.real() / seq.spacing), -mw, mw) * seq.spacing;
                    const double py =
                        std::clamp(std::round(z.imag() / seq.spacing), -mw, mw) * seq.spacing;
                    dmin = std::abs(z - Complex(px, py));
                } else {
                    for (const Complex& p : seq.points) {
                        dmin = std::min(dmin, std::abs(z - p));
                        if (dmin <= sup) break;
                    }
                }
                if (dmin > sup) {
                    sup = dmin;
                    worst = z;
                }
            }
        }
        out.covering_radius = sup;
        out.grid_bound = h * std::sqrt(0.5);
        out.covering_upper = sup + out.grid_bound;
    }
    out.is_net = out.covering_radius <= radius;
    return out;
}

bool sampling_sufficient(const PointSequence& seq) {
    if (seq.space != Space::bergman)
        throw std::invalid_argument("the sampling criterion applies to Bergman sequences only");
    if (!seq.certified || seq.region.empty() || !(seq.covering_bound > 0.0))
        throw std::invalid_argument(
            "the sampling criterion needs a certified covering radius over a stated region");
    return seq.separation > 0.0 && seq.covering_bound < 0.5;
}

double interpolation_functional(double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument(
            format_msg("separation must lie in (0, 1), got %g", delta, 0));
    const double t = std::sqrt(1.0 - delta);
    return (2.0 * kPi + 1.0) * t / ((1.0 - t) * (1.0 - t));
}

double interpolation_threshold() {
    const double b = 4.0 * kPi + 4.0;
    const double t = 0.5 * (b - std::sqrt(b * b - 4.0));
    return 1.0 - t * t;
}

bool interpolation_sufficient(const PointSequence& seq) {
    if (seq.space != Space::bergman)
        throw std::invalid_argument(
            "the interpolation criterion applies to Bergman sequences only");
    if (!(seq.separation > 0.0))
        throw std::invalid_argument("the interpolation criterion needs a certified separation");
    return interpolation_functional(seq.separation) < 0.5;
}

Measure counterexample_bergman(double R, int max_rings) {
    const PointSequence seq = hyperbolic_lattice(R, max_rings);
    std::vector<Atom> atoms;
    atoms.reserve(seq.points.size());
    for (const Complex& b : seq.points) {
        const double w = 1.0 - std::norm(b);
        atoms.push_back({b, w * w});
    }
    TruncationInfo info;
    info.kind = TruncationInfo::Kind::bergman_rings;
    info.outer_ring_beta = seq.rings.back().beta_radius;
    info.covering_beta = seq.beta_covering_bound;
    info.covering_region_beta = seq.region.beta_radius;
    return Measure::atomic(Space::bergman, std::move(atoms), info);
}

Measure counterexample_fock(double r, int window) {
    const double threshold = std::sqrt(2.0 * kPi);
    if (!(r >= threshold - 1e-12))
        throw std::invalid_argument(format_msg(
            "lattice spacing %.12g is below sqrt(2 pi) = %.12g; the induced Toeplitz "
            "operator is invertible for tighter lattices, so no counterexample arises",
            r, threshold));
    const PointSequence seq = square_lattice(r, window);
    std::vector<Atom> atoms;
    atoms.reserve(seq.points.size());
    for (const Complex& p : seq.points) atoms.push_back({p, 1.0});
    TruncationInfo info;
    info.kind = TruncationInfo::Kind::fock_window;
    info.window_halfside = seq.region.half_side;
    info.lattice_spacing = seq.spacing;
    return Measure::atomic(Space::fock, std::move(atoms), info);
}

}  // namespace tlab
