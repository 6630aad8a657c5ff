#include "tlab/carleson.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tlab {
namespace {

void require_radius(Space space, double r) {
    if (space == Space::bergman) {
        if (!(r > 0.0) || !(r < 1.0)) {
            char buf[96];
            std::snprintf(buf, sizeof buf,
                          "Carleson radius must lie in (0, 1) on the disk, got %g", r);
            throw std::invalid_argument(buf);
        }
        return;
    }
    if (!(r > 0.0) || !std::isfinite(r)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "Carleson radius must be positive, got %g", r);
        throw std::invalid_argument(buf);
    }
}

double quotient(const Measure& mu, Complex z, double r, const QuadratureSpec& spec) {
    if (mu.space() == Space::bergman) {
        const PseudoDisk e = pseudo_disk(z, r);
        return mass_in(mu, e, spec) / e.area;
    }
    return mass_in(mu, EuclideanDisk{z, r}, spec);
}

GridReport quotient_sweep(const Measure& mu, double r, const GridRegion& region,
                          int grid_density, const QuadratureSpec& spec) {
    require_radius(mu.space(), r);
    return functional_sweep(mu, region, grid_density,
                            [&](Complex z) { return quotient(mu, z, r, spec); });
}

std::string describe(const GridReport& rep) {
    char buf[160];
    if (!rep.region.fock_rect) {
        std::snprintf(buf, sizeof buf,
                      "polar grid rho <= %.6g: center + %d radial x %d angular (%zu points)",
                      rep.region.rho_max, rep.radial, rep.angular, rep.samples.size());
    } else {
        std::snprintf(buf, sizeof buf,
                      "rectangle [%.6g, %.6g] x [%.6g, %.6g]: %d x %d (%zu points)",
                      rep.region.lo.real(), rep.region.hi.real(), rep.region.lo.imag(),
                      rep.region.hi.imag(), rep.nx, rep.ny, rep.samples.size());
    }
    return buf;
}

}  // namespace

double carleson_ratio_sup(const Measure& mu, double r, const GridRegion& region,
                          int grid_density, const QuadratureSpec& spec) {
    return quotient_sweep(mu, r, region, grid_density, spec).sup_value;
}

double reverse_carleson_inf(const Measure& mu, double r, const GridRegion& region,
                            int grid_density, const QuadratureSpec& spec) {
    return quotient_sweep(mu, r, region, grid_density, spec).inf_value;
}

double default_carleson_radius(const Measure& mu) {
    const TruncationInfo& t = mu.truncation();
    if (mu.space() == Space::bergman) {
        if (t.kind == TruncationInfo::Kind::bergman_rings)
            return std::tanh(t.covering_beta + 0.1);
        return 0.5;
    }
    if (t.kind == TruncationInfo::Kind::fock_window && t.lattice_spacing > 0.0)
        return t.lattice_spacing;
    return 1.0;
}

CarlesonReport classify(const Measure& mu, const ClassifyParams& params) {
    CarlesonReport rep;
    rep.space = mu.space();
    rep.r_used = params.r > 0.0 ? params.r : default_carleson_radius(mu);

    const GridReport ratios =
        quotient_sweep(mu, rep.r_used, params.region, params.grid_density, params.spec);
    rep.sup_ratio = ratios.sup_value;
    rep.inf_ratio = ratios.inf_value;
    rep.arg_sup = ratios.argmax;
    rep.arg_inf = ratios.argmin;
    rep.grid = describe(ratios);
    rep.verdict_carleson = rep.sup_ratio <= rep.carleson_threshold;
    rep.verdict_reverse_condition = rep.inf_ratio >= rep.reverse_threshold;

    const GridReport bz =
        berezin_extrema(mu, params.region, params.grid_density, params.spec);
    rep.berezin_inf = bz.inf_value;
    rep.berezin_sup = bz.sup_value;
    const double r = rep.r_used;
    rep.floor_constant = rep.space == Space::bergman
                             ? r * r * (1.0 - r) * (1.0 - r) / ((1.0 + r) * (1.0 + r))
                             : 0.5 * std::exp(-0.5 * r * r);
    rep.berezin_floor = rep.inf_ratio * rep.floor_constant;

    rep.semantics =
        "verdicts concern the reverse Carleson CONDITION (a mass-quotient floor on this "
        "grid); the reverse Carleson MEASURE property is the sampling norm inequality "
        "and is decided by the spectral profile, not here";
    return rep;
}

}  // namespace tlab
