#include "tlab/quadrature.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_spec(const QuadratureSpec& spec, const char* who) {
    if (spec.radial_nodes < 2 || spec.angular_nodes < 8) {
        std::ostringstream msg;
        msg << who << ": quadrature spec needs radial_nodes >= 2 and angular_nodes >= 8 "
            << "(got " << spec.radial_nodes << ", " << spec.angular_nodes << ")";
        throw std::invalid_argument(msg.str());
    }
    if (!(spec.tolerance > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": tolerance must be positive");
    }
}

[[noreturn]] void bad_sample(const char* who, Complex z) {
    std::ostringstream msg;
    msg << who << ": integrand returned a non-finite value at node ("
        << z.real() << ", " << z.imag() << ")";
    throw std::runtime_error(msg.str());
}

Complex eval_checked(const Integrand& f, Complex z, const char* who) {
    const Complex v = f(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad_sample(who, z);
    return v;
}

Complex sum_rule(const Integrand& f, const std::vector<QuadNode>& nodes, const char* who) {
    // Compensated (Kahan) accumulation, separately per component.
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    for (const QuadNode& n : nodes) {
        const Complex v = eval_checked(f, n.z, who);
        double yr = n.w * v.real() - cr;
        double tr = sr + yr;
        cr = (tr - sr) - yr;
        sr = tr;
        double yi = n.w * v.imag() - ci;
        double ti = si + yi;
        ci = (ti - si) - yi;
        si = ti;
    }
    return {sr, si};
}

QuadratureSpec halved(const QuadratureSpec& spec) {
    QuadratureSpec h = spec;
    h.radial_nodes = std::max(2, spec.radial_nodes / 2);
    h.angular_nodes = std::max(8, spec.angular_nodes / 2);
    return h;
}

// Angular quadrature on an annulus t in [t0, t1] around `center`, with the
// radial panels supplied by the caller (already in the t = r^2 variable).
void append_polar_nodes(std::vector<QuadNode>& out, Complex center, double t0, double t1,
                        int radial_nodes, int angular_nodes) {
    auto [xs, ws] = gauss_legendre_01(radial_nodes);
    const double span = t1 - t0;
    const double aw = 1.0 / static_cast<double>(angular_nodes);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double t = t0 + span * xs[i];
        const double r = std::sqrt(t);
        const double w = span * ws[i] * aw;
        for (int k = 0; k < angular_nodes; ++k) {
            const double theta = 2.0 * kPi * (k + 0.5) * aw;
            out.push_back({center + Complex(r * std::cos(theta), r * std::sin(theta)), w});
        }
    }
}

double default_outer_radius(double decay, double tolerance) {
    return std::sqrt(2.0 * std::log(1.0 / tolerance) / decay);
}

double gaussian_tail_bound(double decay, double outer_radius) {
    // I_{|w| > R} exp(-c |w|^2) dA = exp(-c R^2)/c  (normalized area).
    return std::exp(-decay * outer_radius * outer_radius) / decay;
}

struct PlaneGeometry {
    double outer_radius;
    double tail_bound;
};

PlaneGeometry plane_geometry(double decay, const QuadratureSpec& spec, const char* who) {
    if (!(decay > 0.0) || !std::isfinite(decay)) {
        throw std::invalid_argument(std::string(who) + ": declared Gaussian decay must be positive");
    }
    const double R = spec.outer_radius > 0.0 ? spec.outer_radius
                                             : default_outer_radius(decay, spec.tolerance);
    const double tail = gaussian_tail_bound(decay, R);
    if (tail > spec.tolerance) {
        std::ostringstream msg;
        msg << who << ": outer_radius " << R << " is too small for decay rate " << decay
            << " (a-priori tail bound " << tail << " exceeds tolerance " << spec.tolerance << ")";
        throw std::invalid_argument(msg.str());
    }
    return {R, tail};
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_01: need at least one node");
    std::vector<double> x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, then Newton on P_n.
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (t * p0 - p1) / (t * t - 1.0);
            const double dt = p0 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        // Map [-1, 1] -> [0, 1].
        x[i] = 0.5 * (1.0 - t);
        x[n - 1 - i] = 0.5 * (1.0 + t);
        const double wi = 1.0 / ((1.0 - t * t) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    return {std::move(x), std::move(w)};
}

std::vector<QuadNode> disk_rule(const QuadratureSpec& spec, double inner_rho) {
    require_spec(spec, "disk_rule");
    if (inner_rho < 0.0 || inner_rho >= 1.0) {
        throw std::invalid_argument("disk_rule: inner radius outside [0, 1)");
    }
    std::vector<QuadNode> nodes;
    nodes.reserve(static_cast<std::size_t>(spec.radial_nodes) * spec.angular_nodes);
    append_polar_nodes(nodes, Complex(0.0, 0.0), inner_rho * inner_rho, 1.0,
                       spec.radial_nodes, spec.angular_nodes);
    return nodes;
}

std::vector<QuadNode> plane_rule(Complex center, double inner_radius, double outer_radius,
                                 double decay, const QuadratureSpec& spec) {
    require_spec(spec, "plane_rule");
    if (inner_radius < 0.0 || !(outer_radius > inner_radius)) {
        throw std::invalid_argument("plane_rule: need 0 <= inner_radius < outer_radius");
    }
    const double t0 = inner_radius * inner_radius;
    const double t1 = outer_radius * outer_radius;
    // Composite panels in t, sized to the decay rate so exp(-c t) is resolved
    // on every panel; per-panel node count keeps polynomial factors exact.
    const double panel_span = 4.0 / decay;
    const int panels = std::max(1, static_cast<int>(std::ceil((t1 - t0) / panel_span)));
    const int per_panel = std::max(8, (spec.radial_nodes + 3) / 4);
    std::vector<QuadNode> nodes;
    nodes.reserve(static_cast<std::size_t>(panels) * per_panel * spec.angular_nodes);
    for (int p = 0; p < panels; ++p) {
        const double a = t0 + (t1 - t0) * p / panels;
        const double b = t0 + (t1 - t0) * (p + 1) / panels;
        append_polar_nodes(nodes, center, a, b, per_panel, spec.angular_nodes);
    }
    return nodes;
}

namespace {

Integral with_doubling(const char* who, const QuadratureSpec& spec,
                       const std::function<Complex(const QuadratureSpec&)>& run) {
    Integral out;
    const Complex fine = run(spec);
    const Complex coarse = run(halved(spec));
    out.value = fine;
    out.doubling_delta = std::abs(fine - coarse);
    out.accuracy_warning = !(out.doubling_delta < spec.tolerance);
    (void)who;
    return out;
}

}  // namespace

Integral integrate_disk(const Integrand& f, const QuadratureSpec& spec) {
    require_spec(spec, "integrate_disk");
    return with_doubling("integrate_disk", spec, [&](const QuadratureSpec& s) {
        return sum_rule(f, disk_rule(s), "integrate_disk");
    });
}

Integral integrate_disk_annulus(const Integrand& f, double inner_rho,
                                const QuadratureSpec& spec) {
    require_spec(spec, "integrate_disk_annulus");
    return with_doubling("integrate_disk_annulus", spec, [&](const QuadratureSpec& s) {
        return sum_rule(f, disk_rule(s, inner_rho), "integrate_disk_annulus");
    });
}

Integral integrate_euclidean_disk(const Integrand& f, const EuclideanDisk& disk,
                                  const QuadratureSpec& spec) {
    require_spec(spec, "integrate_euclidean_disk");
    if (!(disk.radius > 0.0) || !std::isfinite(disk.radius)) {
        throw std::invalid_argument("integrate_euclidean_disk: disk radius must be positive");
    }
    const double scale = disk.radius * disk.radius;
    return with_doubling("integrate_euclidean_disk", spec, [&](const QuadratureSpec& s) {
        auto nodes = disk_rule(s);
        for (QuadNode& n : nodes) {
            n.z = disk.center + disk.radius * n.z;
            n.w *= scale;
        }
        return sum_rule(f, nodes, "integrate_euclidean_disk");
    });
}

Integral integrate_plane_gaussian(const Integrand& f, Complex center, double decay,
                                  const QuadratureSpec& spec) {
    require_spec(spec, "integrate_plane_gaussian");
    const PlaneGeometry geo = plane_geometry(decay, spec, "integrate_plane_gaussian");
    Integral out = with_doubling("integrate_plane_gaussian", spec, [&](const QuadratureSpec& s) {
        return sum_rule(f, plane_rule(center, 0.0, geo.outer_radius, decay, s),
                        "integrate_plane_gaussian");
    });
    out.tail_bound = geo.tail_bound;
    return out;
}

Integral integrate_plane_annulus(const Integrand& f, Complex center, double inner_radius,
                                 double decay, const QuadratureSpec& spec) {
    require_spec(spec, "integrate_plane_annulus");
    const PlaneGeometry geo = plane_geometry(decay, spec, "integrate_plane_annulus");
    if (!(geo.outer_radius > inner_radius)) {
        std::ostringstream msg;
        msg << "integrate_plane_annulus: inner radius " << inner_radius
            << " exceeds the truncation radius " << geo.outer_radius;
        throw std::invalid_argument(msg.str());
    }
    Integral out = with_doubling("integrate_plane_annulus", spec, [&](const QuadratureSpec& s) {
        return sum_rule(f, plane_rule(center, inner_radius, geo.outer_radius, decay, s),
                        "integrate_plane_annulus");
    });
    out.tail_bound = geo.tail_bound;
    return out;
}

McEstimate mc_oracle(const Integrand& f, const McRegion& region, const McSpec& spec) {
    if (spec.samples < 2) throw std::invalid_argument("mc_oracle: need at least 2 samples");
    if (!(region.disk.radius > 0.0)) {
        throw std::invalid_argument("mc_oracle: region radius must be positive");
    }
    std::mt19937_64 rng(spec.seed);
    auto uniform = [&rng]() {
        // 53-bit uniform in [0, 1); implementation-independent, so identical
        // seeds give identical streams on every platform.
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    const double R = region.disk.radius;
    const Complex c = region.disk.center;
    double sum_re = 0.0, comp_re = 0.0, sum_im = 0.0, comp_im = 0.0, sum_sq = 0.0, comp_sq = 0.0;
    auto add = [](double& s, double& comp, double y) {
        y -= comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
    };
    const std::size_t n = spec.samples;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = uniform();
        const double v = uniform();
        const double r = R * std::sqrt(u);
        const double theta = 2.0 * kPi * v;
        const Complex z = c + Complex(r * std::cos(theta), r * std::sin(theta));
        const Complex val = eval_checked(f, z, "mc_oracle");
        add(sum_re, comp_re, val.real());
        add(sum_im, comp_im, val.imag());
        add(sum_sq, comp_sq, std::norm(val));
    }
    const double area = R * R;  // normalized area of the region
    const Complex mean(sum_re / n, sum_im / n);
    // Sample variance of the complex values (componentwise, summed).
    double var = (sum_sq - std::norm(mean) * n) / (static_cast<double>(n) - 1.0);
    if (var < 0.0) var = 0.0;
    McEstimate out;
    out.estimate = area * mean;
    out.std_error = area * std::sqrt(var / static_cast<double>(n));
    return out;
}

}  // namespace tlab
