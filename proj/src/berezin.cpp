#include "tlab/berezin.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "tlab/parallel.hpp"

namespace tlab {
namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const char* pattern, double a, double b) {
    char buf[192];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    throw std::invalid_argument(buf);
}

// Compensated sum of term(k) over the atoms, in index order.
template <typename Term>
double kahan_over_atoms(const std::vector<Atom>& atoms, Term term) {
    double sum = 0.0, carry = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const double y = term(atoms[k]) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double berezin_bergman(const Measure& mu, Complex z, const QuadratureSpec& spec) {
    require_in_unit_disk(z, "berezin transform");
    switch (mu.kind()) {
        case Measure::Kind::atomic: {
            const double zf = 1.0 - std::norm(z);
            return zf * zf * kahan_over_atoms(mu.atoms(), [&](const Atom& a) {
                       const double d = std::norm(1.0 - std::conj(z) * a.point);
                       return a.weight / (d * d);
                   });
        }
        case Measure::Kind::absolutely_continuous: {
            const auto& g = mu.density().eval;
            return integrate_disk(
                       [&](Complex u) { return Complex(g(mobius_transform(z, u)), 0.0); }, spec)
                .value.real();
        }
        case Measure::Kind::pull_back: {
            const PolySelfMap& phi = mu.selfmap();
            const double zf = 1.0 - std::norm(z);
            return integrate_disk(
                       [&](Complex w) {
                           const double d = std::norm(1.0 - std::conj(z) * phi.eval(w));
                           return Complex(zf * zf / (d * d), 0.0);
                       },
                       spec)
                .value.real();
        }
    }
    throw std::logic_error("unreachable measure kind");
}

double berezin_fock(const Measure& mu, Complex z, const QuadratureSpec& spec) {
    if (mu.kind() == Measure::Kind::atomic) {
        return 0.5 * kahan_over_atoms(mu.atoms(), [&](const Atom& a) {
                   return a.weight * std::exp(-0.5 * std::norm(z - a.point));
               });
    }
    // Absolutely continuous: the integrand carries the explicit Gaussian, and
    // its finiteness at z is condition (M) there (up to e^{-|z|^2/2}/2); the
    // quadrature rejects non-finite node values.
    const auto& g = mu.density().eval;
    return 0.5 * integrate_plane_gaussian(
                     [&](Complex w) {
                         return Complex(std::exp(-0.5 * std::norm(z - w)) * g(w), 0.0);
                     },
                     z, 0.5, spec)
                     .value.real();
}

// Margin rule for truncated atomic measures: every grid point must keep its
// full metric neighborhood inside the truncation window, so that a missing
// far tail cannot imitate a vanishing Berezin transform.  The neighborhood
// reach is the certified covering radius for Bergman ring lattices and 5
// Gaussian units for Fock windows.
void check_margin_bergman(const Measure& mu, double rho_max) {
    if (mu.kind() != Measure::Kind::atomic) return;
    const TruncationInfo& t = mu.truncation();
    if (t.kind != TruncationInfo::Kind::bergman_rings) return;
    const double allowed = t.outer_ring_beta - t.covering_beta;
    if (std::atanh(rho_max) > allowed + 1e-12)
        fail("grid region rho <= %.12g needs beta <= %.12g to keep a full neighborhood "
             "inside the truncated lattice window",
             rho_max, allowed);
}

void check_margin_fock(const Measure& mu, Complex lo, Complex hi) {
    if (mu.kind() != Measure::Kind::atomic) return;
    const TruncationInfo& t = mu.truncation();
    if (t.kind != TruncationInfo::Kind::fock_window) return;
    const double reach = std::max(std::max(std::abs(lo.real()), std::abs(hi.real())),
                                  std::max(std::abs(lo.imag()), std::abs(hi.imag()))) +
                         5.0;
    if (reach > t.window_halfside + 1e-12)
        fail("grid region reaches %.12g but the truncation window half-side is %.12g; "
             "shrink the region or enlarge the window",
             reach, t.window_halfside);
}

template <typename PointFn>
GridReport sweep(const Measure& mu, const GridRegion& region, int grid_density,
                 PointFn value_at) {
    GridReport report;
    report.region = region;

    std::vector<Complex> zs;
    if (!region.fock_rect) {
        check_margin_bergman(mu, region.rho_max);
        report.angular = grid_density > 0 ? grid_density : 128;
        report.radial = std::max(1, report.angular / 2);
        const double beta_max = std::atanh(region.rho_max);
        zs.reserve(static_cast<std::size_t>(report.radial) * report.angular + 1);
        zs.emplace_back(0.0, 0.0);
        for (int i = 1; i <= report.radial; ++i) {
            const double r = std::tanh(beta_max * i / report.radial);
            for (int a = 0; a < report.angular; ++a) {
                const double theta = 2.0 * kPi * a / report.angular;
                zs.emplace_back(r * std::cos(theta), r * std::sin(theta));
            }
        }
    } else {
        check_margin_fock(mu, region.lo, region.hi);
        report.nx = grid_density > 0 ? grid_density : 101;
        report.ny = report.nx;
        if (region.hi.real() == region.lo.real()) report.nx = 1;
        if (region.hi.imag() == region.lo.imag()) report.ny = 1;
        zs.reserve(static_cast<std::size_t>(report.nx) * report.ny);
        for (int i = 0; i < report.nx; ++i) {
            const double x = report.nx == 1 ? region.lo.real()
                                            : region.lo.real() + (region.hi.real() -
                                                                  region.lo.real()) *
                                                                     i / (report.nx - 1);
            for (int j = 0; j < report.ny; ++j) {
                const double y = report.ny == 1 ? region.lo.imag()
                                                : region.lo.imag() + (region.hi.imag() -
                                                                      region.lo.imag()) *
                                                                         j / (report.ny - 1);
                zs.emplace_back(x, y);
            }
        }
    }

    report.samples.resize(zs.size());
    parallel_fill(zs.size(), [&](std::size_t i) {
        report.samples[i] = {zs[i], value_at(zs[i])};
    });

    report.inf_value = std::numeric_limits<double>::infinity();
    report.sup_value = -std::numeric_limits<double>::infinity();
    for (const GridSample& s : report.samples) {
        if (s.value < report.inf_value) {
            report.inf_value = s.value;
            report.argmin = s.z;
        }
        if (s.value > report.sup_value) {
            report.sup_value = s.value;
            report.argmax = s.z;
        }
    }
    return report;
}

void require_region_space(const Measure& mu, const GridRegion& region) {
    if ((mu.space() == Space::bergman) == region.fock_rect)
        throw std::invalid_argument("grid region shape does not match the measure's space");
}

}  // namespace

Complex kernel(Space space, Complex z, Complex w, bool normalized) {
    if (space == Space::bergman) {
        require_in_unit_disk(z, "kernel");
        require_in_unit_disk(w, "kernel");
        const Complex d = 1.0 - std::conj(z) * w;
        const Complex k = 1.0 / (d * d);
        return normalized ? (1.0 - std::norm(z)) * k : k;
    }
    const Complex e = 0.5 * std::conj(z) * w;
    return normalized ? std::exp(e - 0.25 * std::norm(z)) : std::exp(e);
}

double berezin_transform(const Measure& mu, Complex z, const QuadratureSpec& spec) {
    return mu.space() == Space::bergman ? berezin_bergman(mu, z, spec)
                                        : berezin_fock(mu, z, spec);
}

GridRegion GridRegion::bergman_disk(double rho_max) {
    if (!(rho_max > 0.0) || !(rho_max < 1.0))
        fail("Bergman grid radius must lie in (0, 1), got %g", rho_max, 0);
    GridRegion r;
    r.rho_max = rho_max;
    return r;
}

GridRegion GridRegion::fock_rectangle(Complex lo, Complex hi) {
    if (!(hi.real() >= lo.real()) || !(hi.imag() >= lo.imag()))
        fail("Fock grid rectangle is empty (hi < lo)", 0, 0);
    GridRegion r;
    r.lo = lo;
    r.hi = hi;
    r.fock_rect = true;
    return r;
}

GridReport berezin_extrema(const Measure& mu, const GridRegion& region, int grid_density,
                           const QuadratureSpec& spec) {
    require_region_space(mu, region);
    return sweep(mu, region, grid_density,
                 [&](Complex z) { return berezin_transform(mu, z, spec); });
}

double tail_bergman(const Measure& mu, Complex z, double r, const QuadratureSpec& spec) {
    if (mu.space() != Space::bergman)
        throw std::invalid_argument("the Bergman tail functional needs a Bergman measure");
    require_in_unit_disk(z, "tail functional");
    if (!(r > 0.0) || !(r < 1.0)) fail("tail radius must lie in (0, 1), got %g", r, 0);
    switch (mu.kind()) {
        case Measure::Kind::atomic: {
            const double zf = 1.0 - std::norm(z);
            return zf * zf * kahan_over_atoms(mu.atoms(), [&](const Atom& a) {
                       if (rho(z, a.point) < r) return 0.0;  // inside the open disk E(z, r)
                       const double d = std::norm(1.0 - std::conj(z) * a.point);
                       return a.weight / (d * d);
                   });
        }
        case Measure::Kind::absolutely_continuous: {
            const auto& g = mu.density().eval;
            return integrate_disk_annulus(
                       [&](Complex u) { return Complex(g(mobius_transform(z, u)), 0.0); }, r,
                       spec)
                .value.real();
        }
        case Measure::Kind::pull_back: {
            const PolySelfMap& phi = mu.selfmap();
            const double zf = 1.0 - std::norm(z);
            return integrate_disk(
                       [&](Complex w) {
                           const Complex pw = phi.eval(w);
                           if (rho(z, pw) < r) return Complex(0.0, 0.0);
                           const double d = std::norm(1.0 - std::conj(z) * pw);
                           return Complex(zf * zf / (d * d), 0.0);
                       },
                       spec)
                .value.real();
        }
    }
    throw std::logic_error("unreachable measure kind");
}

double tail_fock(const Measure& mu, Complex z, double R, const QuadratureSpec& spec) {
    if (mu.space() != Space::fock)
        throw std::invalid_argument("the Fock tail functional needs a Fock measure");
    if (!(R > 0.0) || !std::isfinite(R)) fail("tail radius must be positive, got %g", R, 0);
    if (mu.kind() == Measure::Kind::atomic) {
        return kahan_over_atoms(mu.atoms(), [&](const Atom& a) {
            const double d2 = std::norm(z - a.point);
            if (d2 < R * R) return 0.0;  // inside the open ball B(z, R)
            return a.weight * std::exp(-0.5 * d2);
        });
    }
    const auto& g = mu.density().eval;
    return integrate_plane_annulus(
               [&](Complex w) {
                   return Complex(std::exp(-0.5 * std::norm(z - w)) * g(w), 0.0);
               },
               z, R, 0.5, spec)
        .value.real();
}

GridReport tail_sup_bergman(const Measure& mu, double r, const GridRegion& region,
                            int grid_density, const QuadratureSpec& spec) {
    require_region_space(mu, region);
    return sweep(mu, region, grid_density,
                 [&](Complex z) { return tail_bergman(mu, z, r, spec); });
}

GridReport tail_sup_fock(const Measure& mu, double R, const GridRegion& region,
                         int grid_density, const QuadratureSpec& spec) {
    require_region_space(mu, region);
    return sweep(mu, region, grid_density,
                 [&](Complex z) { return tail_fock(mu, z, R, spec); });
}

GridReport functional_sweep(const Measure& mu, const GridRegion& region, int grid_density,
                            const std::function<double(Complex)>& f) {
    require_region_space(mu, region);
    return sweep(mu, region, grid_density, f);
}

}  // namespace tlab
