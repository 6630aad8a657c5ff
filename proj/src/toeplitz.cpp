#include "tlab/toeplitz.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "tlab/berezin.hpp"
#include "tlab/parallel.hpp"

namespace tlab {
namespace {

constexpr int kAssemblyBlock = 4096;  // sources per rank-one accumulation block
constexpr int kCompositionRowCap = 4096;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Per-step basis recurrence factors: value_{n+1} = value_n * z * step[n].
std::vector<double> basis_steps(Space space, int degree) {
    std::vector<double> step(static_cast<std::size_t>(std::max(0, degree - 1)));
    for (std::size_t n = 0; n < step.size(); ++n) {
        step[n] = space == Space::bergman
                      ? std::sqrt((static_cast<double>(n) + 2.0) / (static_cast<double>(n) + 1.0))
                      : 1.0 / std::sqrt(2.0 * (static_cast<double>(n) + 1.0));
    }
    return step;
}

// v_n(p) for n < degree: Bergman e_n(p); Fock u_n(p) = e_n(p) e^{-|p|^2/4}
// (|u_n| <= 1, so the recurrence is overflow-free).
void basis_row(Space space, Complex p, int degree, const std::vector<double>& step,
               Complex* out) {
    Complex v = space == Space::bergman ? Complex(1.0, 0.0)
                                        : Complex(std::exp(-0.25 * std::norm(p)), 0.0);
    out[0] = v;
    for (int n = 1; n < degree; ++n) {
        v *= p * step[static_cast<std::size_t>(n - 1)];
        out[n] = v;
    }
}

struct Source {
    Complex point;
    double weight = 0.0;  // includes density, quadrature, and Gaussian factors
};

std::string describe(const Measure& mu) {
    char buf[128];
    switch (mu.kind()) {
        case Measure::Kind::atomic:
            std::snprintf(buf, sizeof buf, "%s atomic (%zu atoms)", to_string(mu.space()),
                          mu.atoms().size());
            break;
        case Measure::Kind::absolutely_continuous:
            std::snprintf(buf, sizeof buf, "%s ac density %s", to_string(mu.space()),
                          mu.density().name.c_str());
            break;
        case Measure::Kind::pull_back:
            std::snprintf(buf, sizeof buf, "bergman pullback degree %d",
                          mu.selfmap().degree());
            break;
    }
    return buf;
}

// Blocked, compensated, exactly Hermitian assembly of sum_r w_r v(p_r) v(p_r)^*.
// Each upper-triangle entry accumulates over the sources in their global
// order regardless of thread count, so results are bitwise deterministic.
HermitianMatrix assemble(Space space, const std::vector<Source>& sources, int degree,
                         std::string provenance, double truncation_bound) {
    const std::size_t n_entries = static_cast<std::size_t>(degree) * degree;
    const std::size_t n_tri = static_cast<std::size_t>(degree) * (degree + 1) / 2;
    std::vector<double> sum_re(n_tri, 0.0), sum_im(n_tri, 0.0);
    std::vector<double> car_re(n_tri, 0.0), car_im(n_tri, 0.0);

    // Row starts of the packed upper triangle: (m, n) -> tri_row[m] + (n - m).
    std::vector<std::size_t> tri_row(static_cast<std::size_t>(degree));
    for (int m = 0, acc = 0; m < degree; acc += degree - m, ++m)
        tri_row[static_cast<std::size_t>(m)] = static_cast<std::size_t>(acc);

    const std::vector<double> step = basis_steps(space, degree);
    std::vector<Complex> block(static_cast<std::size_t>(kAssemblyBlock) * degree);

    for (std::size_t base = 0; base < sources.size(); base += kAssemblyBlock) {
        const std::size_t count = std::min<std::size_t>(kAssemblyBlock, sources.size() - base);
        parallel_fill(count, [&](std::size_t r) {
            basis_row(space, sources[base + r].point, degree, step,
                      block.data() + r * degree);
        });
        parallel_fill(n_tri, [&](std::size_t t) {
            // Invert the packed index.
            int m = 0;
            while (tri_row[static_cast<std::size_t>(m)] + static_cast<std::size_t>(degree - m) <= t)
                ++m;
            const int n = m + static_cast<int>(t - tri_row[static_cast<std::size_t>(m)]);
            double sre = sum_re[t], sim = sum_im[t], cre = car_re[t], cim = car_im[t];
            for (std::size_t r = 0; r < count; ++r) {
                const Complex* v = block.data() + r * degree;
                const Complex term =
                    sources[base + r].weight * v[n] * std::conj(v[m]);
                double y = term.real() - cre;
                double s = sre + y;
                cre = (s - sre) - y;
                sre = s;
                y = term.imag() - cim;
                s = sim + y;
                cim = (s - sim) - y;
                sim = s;
            }
            sum_re[t] = sre;
            sum_im[t] = sim;
            car_re[t] = cre;
            car_im[t] = cim;
        });
    }

    HermitianMatrix out;
    out.space = space;
    out.degree = degree;
    out.provenance = std::move(provenance);
    out.truncation_bound = truncation_bound;
    out.entries.resize(n_entries);
    for (int m = 0; m < degree; ++m) {
        for (int n = m; n < degree; ++n) {
            const std::size_t t = tri_row[static_cast<std::size_t>(m)] +
                                  static_cast<std::size_t>(n - m);
            const Complex value(sum_re[t], m == n ? 0.0 : sum_im[t]);
            out.entries[static_cast<std::size_t>(m) * degree + n] = value;
            if (n > m)
                out.entries[static_cast<std::size_t>(n) * degree + m] = std::conj(value);
        }
    }
    for (const Complex& e : out.entries) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw std::runtime_error(
                "toeplitz_matrix: non-finite entry; the measure fails the space's "
                "admissibility requirements");
    }
    return out;
}

// ---- source construction per measure kind -------------------------------

// Fock window truncation |p| <= sqrt(2N) + 6 with the Poisson peak bound
// (w/2) e^{(N-1) log l - lgamma(N) - l}, l = |p|^2/2 > N on the cut side.
std::vector<Source> fock_atomic_sources(const Measure& mu, int degree, double* bound) {
    const bool windowed = mu.truncation().kind == TruncationInfo::Kind::fock_window;
    const double cut = std::sqrt(2.0 * degree) + 6.0;
    std::vector<Source> src;
    src.reserve(mu.atoms().size());
    double dropped = 0.0;
    for (const Atom& a : mu.atoms()) {
        if (windowed && std::abs(a.point) > cut) {
            const double l = 0.5 * std::norm(a.point);
            dropped += 0.5 * a.weight *
                       std::exp((degree - 1) * std::log(l) - std::lgamma(degree) - l);
            continue;
        }
        src.push_back({a.point, 0.5 * a.weight});
    }
    *bound = dropped;
    return src;
}

// Bergman ring truncation: drop trailing weight classes once their mass times
// (N+1) falls below 1e-12 of the included mass (a trace lower bound); a
// dropped atom's entries are bounded by w (N+1) since |e_n|^2 <= n+1.
std::vector<Source> bergman_atomic_sources(const Measure& mu, int degree, double* bound) {
    const auto& atoms = mu.atoms();
    std::vector<Source> src;
    src.reserve(atoms.size());
    *bound = 0.0;
    if (mu.truncation().kind != TruncationInfo::Kind::bergman_rings) {
        for (const Atom& a : atoms) src.push_back({a.point, a.weight});
        return src;
    }
    // Weight classes are contiguous runs (one ring, one weight).
    std::size_t k = 0;
    double included = 0.0, dropped = 0.0;
    bool dropping = false;
    while (k < atoms.size()) {
        std::size_t end = k;
        double class_mass = 0.0;
        while (end < atoms.size() && atoms[end].weight == atoms[k].weight) {
            class_mass += atoms[end].weight;
            ++end;
        }
        if (dropping ||
            (included > 0.0 && class_mass * (degree + 1) < 1e-12 * included)) {
            dropping = true;  // classes are ordered by decaying weight
            dropped += class_mass * (degree + 1);
        } else {
            for (std::size_t i = k; i < end; ++i)
                src.push_back({atoms[i].point, atoms[i].weight});
            included += class_mass;
        }
        k = end;
    }
    *bound = dropped;
    return src;
}

QuadratureSpec bump_for_degree(const QuadratureSpec& spec, int poly_degree) {
    QuadratureSpec local = spec;
    local.angular_nodes =
        std::min(4096, std::max(spec.angular_nodes, 2 * poly_degree + 2));
    local.radial_nodes = std::min(512, std::max(spec.radial_nodes, poly_degree + 1));
    return local;
}

std::vector<Source> quadrature_sources(const Measure& mu, int degree,
                                       const QuadratureSpec& spec) {
    std::vector<Source> src;
    if (mu.kind() == Measure::Kind::pull_back) {
        const QuadratureSpec local =
            bump_for_degree(spec, mu.selfmap().degree() * (degree - 1));
        for (const QuadNode& q : disk_rule(local))
            src.push_back({mu.selfmap().eval(q.z), q.w});
        return src;
    }
    const Density& g = mu.density();
    if (mu.space() == Space::bergman) {
        for (const QuadNode& q : disk_rule(bump_for_degree(spec, degree - 1)))
            src.push_back({q.z, q.w * g.eval(q.z)});
        return src;
    }
    QuadratureSpec local = spec;
    local.angular_nodes = std::max(spec.angular_nodes, 2 * degree);
    const double decay = 0.25;
    double outer = spec.outer_radius;
    if (outer <= 0.0)
        outer = std::sqrt(2.0 * std::log(1.0 / spec.tolerance) / decay);
    outer = std::max(outer, std::sqrt(2.0 * degree) + 8.0);
    // The Gaussian weight e^{-|w|^2/2} is carried by the basis rows u_n.
    for (const QuadNode& q : plane_rule(Complex(0.0, 0.0), 0.0, outer, decay, local))
        src.push_back({q.z, 0.5 * q.w * g.eval(q.z)});
    return src;
}

Eigen::MatrixXcd to_eigen(const HermitianMatrix& mat) {
    Eigen::MatrixXcd a(mat.degree, mat.degree);
    for (int m = 0; m < mat.degree; ++m)
        for (int n = 0; n < mat.degree; ++n) a(m, n) = mat.at(m, n);
    return a;
}

// Coefficients of phi^(n+1) from phi^n, truncated at max_len terms (truncated
// inputs only ever feed truncated outputs).
std::vector<Complex> poly_multiply(const std::vector<Complex>& a,
                                   const std::vector<Complex>& b, std::size_t max_len) {
    std::vector<Complex> out(std::min(max_len, a.size() + b.size() - 1), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.size() && i < out.size(); ++i) {
        if (a[i] == Complex(0.0, 0.0)) continue;
        const std::size_t jmax = std::min(b.size(), out.size() - i);
        for (std::size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// <e_n o phi, e_m> for m < rows, n < cols, by exact coefficient algebra.
ComplexMatrix composition_block(const PolySelfMap& phi, int rows, int cols) {
    ComplexMatrix c;
    c.rows = rows;
    c.cols = cols;
    c.entries.assign(static_cast<std::size_t>(rows) * cols, Complex(0.0, 0.0));
    std::vector<Complex> power{Complex(1.0, 0.0)};  // phi^0
    for (int n = 0; n < cols; ++n) {
        const double sn = std::sqrt(static_cast<double>(n) + 1.0);
        const int mmax = std::min<int>(rows, static_cast<int>(power.size()));
        for (int m = 0; m < mmax; ++m) {
            c.entries[static_cast<std::size_t>(m) * cols + n] =
                sn / std::sqrt(static_cast<double>(m) + 1.0) * power[static_cast<std::size_t>(m)];
        }
        if (n + 1 < cols)
            power = poly_multiply(power, phi.coeffs, static_cast<std::size_t>(rows));
    }
    return c;
}

}  // namespace

Complex basis_eval(Space space, int n, Complex z) {
    if (n < 0) fail("basis_eval: the basis index must be nonnegative");
    if (space == Space::bergman) {
        require_in_unit_disk(z, "basis_eval");
        Complex p(1.0, 0.0);
        for (int k = 0; k < n; ++k) p *= z;
        return std::sqrt(static_cast<double>(n) + 1.0) * p;
    }
    if (n == 0) return Complex(1.0, 0.0);
    if (z == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
    const Complex lg = static_cast<double>(n) * std::log(z) -
                       0.5 * (n * std::log(2.0) + std::lgamma(static_cast<double>(n) + 1.0));
    if (lg.real() > 709.0) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "basis_eval: e_%d overflows at |z| = %g", n,
                      std::abs(z));
        throw std::overflow_error(buf);
    }
    return std::exp(lg);
}

HermitianMatrix toeplitz_matrix(const Measure& mu, int degree, const QuadratureSpec& spec) {
    if (degree < 1) fail("toeplitz_matrix: degree must be at least 1");
    double bound = 0.0;
    std::vector<Source> src;
    if (mu.kind() == Measure::Kind::atomic) {
        src = mu.space() == Space::fock ? fock_atomic_sources(mu, degree, &bound)
                                        : bergman_atomic_sources(mu, degree, &bound);
    } else {
        src = quadrature_sources(mu, degree, spec);
    }
    return assemble(mu.space(), src, degree, describe(mu), bound);
}

SpectralBounds spectral_bounds(const HermitianMatrix& mat) {
    if (mat.degree < 1 ||
        mat.entries.size() != static_cast<std::size_t>(mat.degree) * mat.degree)
        fail("spectral_bounds: malformed matrix");
    double scale = 0.0;
    for (const Complex& e : mat.entries) scale = std::max(scale, std::abs(e));
    for (int m = 0; m < mat.degree; ++m) {
        for (int n = 0; n < mat.degree; ++n) {
            if (std::abs(mat.at(m, n) - std::conj(mat.at(n, m))) >
                1e-12 * std::max(1.0, scale))
                fail("spectral_bounds: matrix is not Hermitian");
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(mat),
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectral_bounds: eigensolver failed to converge");
    const auto& ev = solver.eigenvalues();
    return {ev(0), ev(mat.degree - 1)};
}

SpectralProfile invertibility_profile(const Measure& mu, const std::vector<int>& degrees,
                                      const QuadratureSpec& spec) {
    if (degrees.empty()) fail("invertibility_profile: no degrees given");
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 1 || (i > 0 && degrees[i] <= degrees[i - 1]))
            fail("invertibility_profile: degrees must be strictly increasing and >= 1");
    }
    const HermitianMatrix top = toeplitz_matrix(mu, degrees.back(), spec);

    SpectralProfile profile;
    profile.degrees = degrees;
    profile.lambda_min.resize(degrees.size());
    profile.lambda_max.resize(degrees.size());
    profile.truncation_bound = top.truncation_bound;
    profile.note =
        "nested principal blocks of one compression; lambda_min(N) decreases to the "
        "infimum of the Toeplitz quadratic form over polynomials (the bottom of the "
        "spectrum by density): decay to zero signals non-invertibility, a floor "
        "certifies polynomial-subspace coercivity";

    parallel_fill(degrees.size(), [&](std::size_t i) {
        const int d = degrees[i];
        HermitianMatrix block;
        block.space = top.space;
        block.degree = d;
        block.entries.resize(static_cast<std::size_t>(d) * d);
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n)
                block.entries[static_cast<std::size_t>(m) * d + n] = top.at(m, n);
        const SpectralBounds b = spectral_bounds(block);
        profile.lambda_min[i] = b.lambda_min;
        profile.lambda_max[i] = b.lambda_max;
    });
    for (const double lm : profile.lambda_min) {
        if (lm < -1e-10)
            throw std::runtime_error(
                "invertibility_profile: compression is not positive semidefinite");
    }
    return profile;
}

ComplexMatrix composition_matrix(const PolySelfMap& phi, int degree) {
    if (degree < 1) fail("composition_matrix: degree must be at least 1");
    (void)Measure::pull_back(phi);  // strict self-map certification
    return composition_block(phi, degree, degree);
}

double pullback_identity_residual(const PolySelfMap& phi, int degree,
                                  const QuadratureSpec& spec) {
    if (degree < 1) fail("pullback_identity_residual: degree must be at least 1");
    const Measure mu = Measure::pull_back(phi);  // validates phi
    const long full_rows = static_cast<long>(phi.degree()) * (degree - 1) + 1;
    const int rows = static_cast<int>(std::min<long>(full_rows, kCompositionRowCap));
    const ComplexMatrix c = composition_block(phi, rows, degree);
    const HermitianMatrix t = toeplitz_matrix(mu, degree, spec);

    if (rows < full_rows) {
        // Parseval deficit of each truncated column bounds the missing rows'
        // contribution to any product entry (Cauchy-Schwarz).
        double worst = 0.0;
        for (int n = 0; n < degree; ++n) {
            double kept = 0.0;
            for (int m = 0; m < rows; ++m) kept += std::norm(c.at(m, n));
            worst = std::max(worst, t.at(n, n).real() - kept);
        }
        const double tol = std::max(spec.tolerance, 1e-10);
        if (worst > tol) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "pullback_identity_residual: composition rows capped at %d of %ld "
                          "needed; Parseval tail bound %.3g exceeds tolerance %.3g",
                          rows, full_rows, worst, tol);
            throw std::runtime_error(buf);
        }
    }

    double residual = 0.0;
    for (int m = 0; m < degree; ++m) {
        for (int n = m; n < degree; ++n) {
            Complex dot(0.0, 0.0);
            for (int j = 0; j < rows; ++j) dot += std::conj(c.at(j, m)) * c.at(j, n);
            residual = std::max(residual, std::abs(dot - t.at(m, n)));
        }
    }
    return residual;
}

double berezin_vs_form_check(const Measure& mu, const std::vector<Complex>& probes,
                             int degree, const QuadratureSpec& spec) {
    if (probes.empty()) fail("berezin_vs_form_check: no probe points given");
    const HermitianMatrix m = toeplitz_matrix(mu, degree, spec);
    const std::vector<double> step = basis_steps(mu.space(), degree);
    std::vector<Complex> v(static_cast<std::size_t>(degree));
    double worst = 0.0;
    for (const Complex z : probes) {
        if (mu.space() == Space::bergman) require_in_unit_disk(z, "berezin_vs_form_check");
        basis_row(mu.space(), z, degree, step, v.data());
        // Coefficients of the truncated kernel at z are a_n = conj(v_n).
        Complex form(0.0, 0.0);
        double norm2 = 0.0;
        for (int i = 0; i < degree; ++i) {
            norm2 += std::norm(v[i]);
            for (int j = 0; j < degree; ++j)
                form += m.at(i, j) * std::conj(v[j]) * v[i];
        }
        const double reference = berezin_transform(mu, z, spec);
        worst = std::max(worst, std::abs(form.real() / norm2 - reference));
    }
    return worst;
}

}  // namespace tlab
