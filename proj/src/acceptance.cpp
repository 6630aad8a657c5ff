#include "tlab/acceptance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include "tlab/berezin.hpp"
#include "tlab/carleson.hpp"
#include "tlab/geometry.hpp"
#include "tlab/lattice.hpp"
#include "tlab/measure.hpp"
#include "tlab/quadrature.hpp"
#include "tlab/reports.hpp"
#include "tlab/toeplitz.hpp"

namespace tlab {
namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
}

AcceptanceCheck guarded(int id, const char* name,
                        const std::function<void(AcceptanceCheck&)>& body) {
    AcceptanceCheck check;
    check.id = id;
    check.name = name;
    try {
        body(check);
    } catch (const std::exception& e) {
        check.pass = false;
        check.detail = std::string("exception: ") + e.what();
    }
    return check;
}

Measure flat(Space space) { return Measure::absolutely_continuous(space, density_one()); }

// 1.  The flat measure is the identity symbol: its Berezin transform is the
// constant 1 on both spaces and its compressions are identity matrices.
void check_identity_symbol(AcceptanceCheck& c) {
    const GridReport disk = berezin_extrema(flat(Space::bergman), GridRegion::bergman_disk(0.95), 20);
    const GridReport rect = berezin_extrema(
        flat(Space::fock), GridRegion::fock_rectangle({-2.0, -2.0}, {2.0, 2.0}), 14);
    double berezin_dev = 0.0;
    for (double v : {disk.inf_value, disk.sup_value, rect.inf_value, rect.sup_value})
        berezin_dev = std::max(berezin_dev, std::abs(v - 1.0));
    const std::size_t points = disk.samples.size() + rect.samples.size();

    double identity_dev = 0.0;
    for (Space space : {Space::bergman, Space::fock}) {
        const HermitianMatrix m = toeplitz_matrix(flat(space), 30);
        for (int i = 0; i < m.degree; ++i)
            for (int j = 0; j < m.degree; ++j)
                identity_dev = std::max(identity_dev,
                                        std::abs(m.at(i, j) - (i == j ? 1.0 : 0.0)));
    }
    c.pass = berezin_dev <= 1e-8 && identity_dev <= 1e-8;
    c.detail = "max |Berezin - 1| = " + num(berezin_dev) + " over " +
               std::to_string(points) + " grid points, max |T(30) - I| entry = " +
               num(identity_dev) + " across both spaces (tol 1e-8)";
}

// 2.  Pulling back through z^2 gives the diagonal (n+1)/(2n+1), bounded away
// from zero at every degree, and the compression factors as C*C up to the
// Parseval tail; the strict contraction z/2 collapses like 4^{-N} instead.
void check_squaring_map(AcceptanceCheck& c) {
    const PolySelfMap square{{0.0, 0.0, 1.0}};
    const Measure mu = Measure::pull_back(square);
    const HermitianMatrix m = toeplitz_matrix(mu, 60);
    double entry_dev = 0.0;
    for (int i = 0; i < m.degree; ++i)
        for (int j = 0; j < m.degree; ++j) {
            const double want = i == j ? (i + 1.0) / (2.0 * i + 1.0) : 0.0;
            entry_dev = std::max(entry_dev, std::abs(m.at(i, j) - want));
        }

    std::vector<int> degrees(60);
    std::iota(degrees.begin(), degrees.end(), 1);
    const SpectralProfile prof = invertibility_profile(mu, degrees);
    const double floor = *std::min_element(prof.lambda_min.begin(), prof.lambda_min.end());

    const double residual = pullback_identity_residual(square, 10);

    const PolySelfMap half{{0.0, 0.5}};
    const SpectralProfile contraction =
        invertibility_profile(Measure::pull_back(half), {5, 10, 15});
    const double scale = contraction.lambda_min.front() * std::pow(4.0, 5);
    bool envelope = true;
    for (std::size_t k = 0; k < contraction.degrees.size(); ++k) {
        const double model = scale * std::pow(4.0, -contraction.degrees[k]);
        envelope = envelope && contraction.lambda_min[k] >= 0.5 * model &&
                   contraction.lambda_min[k] <= 2.0 * model;
    }

    c.pass = entry_dev <= 1e-10 && floor >= 0.5 && residual < 1e-10 && envelope;
    c.detail = "z^2 entry dev " + num(entry_dev) + " (tol 1e-10), lambda_min >= " + num(floor) +
               " over N = 1..60 (needs 1/2), factorization residual " + num(residual) +
               " (tol 1e-10); z/2 floor tracks 4^{-N} within a factor 2" +
               std::string(envelope ? "" : " [violated]");
}

// 3.  The radial density 1 - |z|^2 diagonalizes to 1/(n+2), so the profile
// floor is exactly 1/(N+1): invertibility fails and the profile says so.
void check_radial_density(AcceptanceCheck& c) {
    const Measure mu =
        Measure::absolutely_continuous(Space::bergman, density_one_minus_abs2());
    const HermitianMatrix m = toeplitz_matrix(mu, 20);
    double entry_dev = 0.0;
    for (int i = 0; i < m.degree; ++i)
        for (int j = 0; j < m.degree; ++j) {
            const double want = i == j ? 1.0 / (i + 2.0) : 0.0;
            entry_dev = std::max(entry_dev, std::abs(m.at(i, j) - want));
        }
    const SpectralProfile prof = invertibility_profile(mu, {5, 10, 20});
    double law_dev = 0.0;
    for (std::size_t k = 0; k < prof.degrees.size(); ++k)
        law_dev = std::max(law_dev,
                           std::abs(prof.lambda_min[k] * (prof.degrees[k] + 1.0) - 1.0));
    c.pass = entry_dev <= 1e-10 && law_dev <= 1e-10;
    c.detail = "entry dev vs 1/(n+2) diagonal " + num(entry_dev) +
               ", max |lambda_min(N) (N+1) - 1| = " + num(law_dev) +
               " at N in {5, 10, 20} (tol 1e-10)";
}

// 4.  For the flat measure the disk tail is the Mobius-invariant constant
// 1 - r^2 at every center.
void check_disk_tail(AcceptanceCheck& c) {
    double dev = 0.0;
    for (double r : {0.5, 0.8, 0.9, 0.99}) {
        const GridReport rep =
            tail_sup_bergman(flat(Space::bergman), r, GridRegion::bergman_disk(0.9), 12);
        const double want = 1.0 - r * r;
        dev = std::max({dev, std::abs(rep.sup_value - want), std::abs(rep.inf_value - want)});
    }
    c.pass = dev <= 1e-6;
    c.detail = "max |tail - (1 - r^2)| = " + num(dev) +
               " over r in {0.5, 0.8, 0.9, 0.99} on a 73-point sweep (tol 1e-6)";
}

// 5.  For the flat plane measure the tail is the translation-invariant
// constant 2 e^{-R^2/2}; for the supercritical lattice the swept tail still
// decays under a fitted Gaussian envelope, so the spectral collapse seen in
// check 6 cannot be blamed on mass escaping to infinity.
void check_plane_tail(AcceptanceCheck& c) {
    double dev = 0.0;
    for (double radius : {1.0, 2.0, 3.0}) {
        const GridReport rep = tail_sup_fock(
            flat(Space::fock), radius,
            GridRegion::fock_rectangle({-1.5, -1.5}, {1.5, 1.5}), 9);
        const double want = 2.0 * std::exp(-radius * radius / 2.0);
        dev = std::max({dev, std::abs(rep.sup_value - want), std::abs(rep.inf_value - want)});
    }

    const Measure lattice = counterexample_fock(3.5, 12);
    const GridRegion cell = GridRegion::fock_rectangle({0.0, 0.0}, {3.5, 3.5});
    const double base = tail_sup_fock(lattice, 3.0, cell, 41).sup_value;
    const double envelope_scale = base * std::exp(9.0 / 8.0);
    double worst_ratio = 0.0;
    for (double radius : {4.0, 5.0, 6.0}) {
        const double sup = tail_sup_fock(lattice, radius, cell, 41).sup_value;
        worst_ratio = std::max(
            worst_ratio, sup / (envelope_scale * std::exp(-radius * radius / 8.0)));
    }
    c.pass = dev <= 1e-8 && worst_ratio <= 1.0;
    c.detail = "max |tail - 2 e^{-R^2/2}| = " + num(dev) +
               " at R in {1, 2, 3} (tol 1e-8); lattice tail sup stays under the fitted "
               "C e^{-R^2/8} envelope with headroom factor " +
               num(worst_ratio) + " (needs <= 1)";
}

// 6.  Flagship plane experiment: the spacing-3.5 square lattice satisfies the
// reverse grid condition with a positive Berezin floor, yet its compressions
// collapse, while the subcritical control keeps a stable floor.
void check_fock_flagship(AcceptanceCheck& c) {
    const CounterexampleReport rep = counterexample_fock_report(3.5, 12, {10, 20, 40, 60});
    bool strict_decrease = true;
    for (std::size_t k = 1; k < rep.profile.lambda_min.size(); ++k)
        strict_decrease =
            strict_decrease && rep.profile.lambda_min[k] < rep.profile.lambda_min[k - 1];
    const bool floor_ok =
        rep.carleson.berezin_inf >= rep.analytic_floor && rep.analytic_floor >= 0.0233;
    c.pass = rep.condition_m && rep.carleson.verdict_reverse_condition &&
             rep.carleson.inf_ratio >= 1.0 - 1e-12 && floor_ok && strict_decrease &&
             rep.profile_ratio < rep.control_ratio && rep.profile_ratio < 1e-4 &&
             rep.control_ratio > 0.9;
    c.detail = "Berezin inf " + num(rep.carleson.berezin_inf) + " >= floor " +
               num(rep.analytic_floor) + ", grid inf ratio " + num(rep.carleson.inf_ratio) +
               "; lambda_min falls " + num(rep.profile.lambda_min.front()) + " -> " +
               num(rep.profile.lambda_min.back()) + " (ratio " + num(rep.profile_ratio) +
               " < 1e-4) while the spacing-1.8 control holds ratio " +
               num(rep.control_ratio) + " > 0.9";
}

// 7.  Flagship disk experiment: the ring lattice is certified interpolating
// (separated beyond the threshold, not sampling), carries a positive Berezin
// floor, and its spectral profile is attached without any decay assertion --
// the desk-scale record of the degenerating direction lives in the matrices.
void check_bergman_flagship(AcceptanceCheck& c) {
    const CounterexampleReport rep = counterexample_bergman_report(7.0, 3, {10, 20, 40});
    const bool profile_ok = rep.profile.degrees == std::vector<int>{10, 20, 40} &&
                            rep.profile.lambda_min.size() == 3 &&
                            rep.profile.lambda_max.size() == 3;
    bool psd_ok = profile_ok;
    for (double v : rep.profile.lambda_min)
        psd_ok = psd_ok && std::isfinite(v) && v >= -1e-10;
    const bool floor_ok =
        rep.carleson.berezin_inf >= rep.analytic_floor && rep.analytic_floor >= 1.32e-5;
    c.pass = rep.separation >= 3.5 - 1e-12 && rep.covering_upper <= 7.0 &&
             rep.interpolation_sufficient && !rep.sampling_sufficient && floor_ok &&
             rep.carleson.verdict_reverse_condition &&
             std::abs(rep.carleson.r_used - 0.9985) <= 1e-15 && psd_ok;
    c.detail = "separation " + num(rep.separation) + " >= 3.5, covering bound " +
               num(rep.covering_upper) + " <= 7, interpolation certificate holds, "
               "sampling criterion does not; Berezin inf " +
               num(rep.carleson.berezin_inf) + " >= floor " + num(rep.analytic_floor) +
               ", reverse grid condition at r = 0.9985; profile at N in {10, 20, 40} "
               "recorded without a decay assertion";
}

// 8.  Sampling-side control: the dense hyperbolic lattice is sampling, and
// its profile floor stays within a fixed factor across degrees.
void check_sampling_control(AcceptanceCheck& c) {
    const PointSequence seq = hyperbolic_lattice(0.4, 12);
    const bool sampling = sampling_sufficient(seq);
    const double rho_covering = std::tanh(seq.beta_covering_bound);
    const SpectralProfile prof =
        invertibility_profile(counterexample_bergman(0.4, 12), {10, 20, 40});
    const double hi = *std::max_element(prof.lambda_min.begin(), prof.lambda_min.end());
    const double lo = *std::min_element(prof.lambda_min.begin(), prof.lambda_min.end());
    const double factor = hi / lo;
    c.pass = sampling && rho_covering < 0.5 && lo > 0.0 && factor < 4.0;
    c.detail = std::string("sampling certificate ") + (sampling ? "holds" : "fails") +
               " (rho covering bound " + num(rho_covering) +
               " < 1/2), lambda_min stays in [" + num(lo) + ", " + num(hi) +
               "] at N in {10, 20, 40}: spread factor " + num(factor) + " < 4";
}

// 9.  Independent randomized oracle (fixed seed) against closed forms, plus
// a battery of structural invariants.
void check_battery(AcceptanceCheck& c, std::uint64_t mc_seed) {
    McSpec spec{};  // 10^6 samples; fixed seed makes the run deterministic
    spec.seed = mc_seed;
    struct Entry {
        std::string label;
        double closed = 0.0;
        McEstimate est;
    };
    std::vector<Entry> mc;

    {
        const Complex z(0.4, 0.2);
        const double z2 = std::norm(z);
        const double closed = 0.25 * (1.0 - z2) * (1.0 - z2) /
                              ((1.0 - 0.25 * z2) * (1.0 - 0.25 * z2));
        mc.push_back({"pseudo-disk area", closed,
                      mc_oracle([z](Complex w) {
                          return Complex(rho(z, w) < 0.5 ? 1.0 : 0.0, 0.0);
                      }, McRegion::unit_disk(), spec)});
    }
    mc.push_back({"radial density diagonal", 0.2,
                  mc_oracle([](Complex w) {
                      const double b = std::norm(basis_eval(Space::bergman, 3, w));
                      return Complex((1.0 - std::norm(w)) * b, 0.0);
                  }, McRegion::unit_disk(), spec)});
    mc.push_back({"squaring pull-back diagonal", 0.6,
                  mc_oracle([](Complex w) {
                      return Complex(std::norm(basis_eval(Space::bergman, 2, w * w)), 0.0);
                  }, McRegion::unit_disk(), spec)});
    mc.push_back({"plane basis normalization", 1.0,
                  mc_oracle([](Complex w) {
                      const double b = std::norm(basis_eval(Space::fock, 1, w));
                      return Complex(0.5 * b * std::exp(-0.5 * std::norm(w)), 0.0);
                  }, McRegion::euclidean({Complex(0.0, 0.0), 7.0}), spec)});
    const double gauss_closed = (2.0 / 3.0) * std::exp(-1.0 / 6.0);
    mc.push_back({"Gaussian density Berezin", gauss_closed,
                  mc_oracle([](Complex w) {
                      return Complex(0.5 * std::exp(-0.5 * std::norm(Complex(1.0, 0.0) - w)) *
                                         std::exp(-0.25 * std::norm(w)),
                                     0.0);
                  }, McRegion::euclidean({Complex(0.0, 0.0), 9.0}), spec)});
    mc.push_back({"disk tail at r = 1/2", 0.75,
                  mc_oracle([](Complex w) {
                      const Complex z(0.2, 0.0);
                      if (rho(z, w) <= 0.5) return Complex(0.0, 0.0);
                      return Complex(std::norm(kernel(Space::bergman, z, w, true)), 0.0);
                  }, McRegion::unit_disk(), spec)});
    mc.push_back({"plane tail at R = 1", 2.0 * std::exp(-0.5),
                  mc_oracle([](Complex w) {
                      const Complex z(0.5, 0.0);
                      if (std::abs(w - z) <= 1.0) return Complex(0.0, 0.0);
                      return Complex(std::exp(-0.5 * std::norm(z - w)), 0.0);
                  }, McRegion::euclidean({Complex(0.5, 0.0), 8.0}), spec)});

    bool mc_ok = true;
    double worst_sigma = 0.0;
    std::string worst_label = "none";
    for (const Entry& e : mc) {
        const double se = std::max(e.est.std_error, 1e-9);
        const double sigma = std::abs(e.est.estimate.real() - e.closed) / se;
        if (sigma > worst_sigma) {
            worst_sigma = sigma;
            worst_label = e.label;
        }
        mc_ok = mc_ok && sigma <= 3.0;
    }

    // Structural invariants.
    double rho_dev = 0.0;
    for (Complex a : {Complex(0.3, 0.1), Complex(-0.5, 0.4), Complex(0.0, 0.7)})
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                const Complex z = std::polar(0.05 + 0.14 * i, 1.1 * i);
                const Complex w = std::polar(0.09 + 0.13 * j, 0.7 * j + 0.3);
                rho_dev = std::max(rho_dev,
                                   std::abs(rho(mobius_transform(a, z), mobius_transform(a, w)) -
                                            rho(z, w)));
            }

    Complex acc(0.0, 0.0);
    const Complex zb(0.4, 0.1), wb(-0.2, 0.3);
    for (int n = 0; n < 200; ++n)
        acc += basis_eval(Space::bergman, n, zb) * std::conj(basis_eval(Space::bergman, n, wb));
    const Complex denom = 1.0 - std::conj(wb) * zb;
    double expansion_dev = std::abs(acc - 1.0 / (denom * denom));
    Complex accf(0.0, 0.0);
    const Complex zf(1.2, -0.7), wf(0.5, 0.9);
    for (int n = 0; n < 120; ++n)
        accf += basis_eval(Space::fock, n, zf) * std::conj(basis_eval(Space::fock, n, wf));
    expansion_dev = std::max(expansion_dev,
                             std::abs(accf - std::exp(std::conj(wf) * zf / 2.0)));

    const Complex z0(0.3, 0.4);
    const Integral norm_int = integrate_disk([z0](Complex w) {
        return Complex(std::norm(kernel(Space::bergman, z0, w, true)), 0.0);
    });
    const double norm_dev = std::abs(norm_int.value.real() - 1.0);

    const SpectralProfile nested =
        invertibility_profile(counterexample_fock(3.5, 6), {4, 8, 12});
    bool interlacing = true;
    for (std::size_t k = 1; k < nested.degrees.size(); ++k)
        interlacing = interlacing &&
                      nested.lambda_min[k] <= nested.lambda_min[k - 1] + 1e-12 &&
                      nested.lambda_max[k] >= nested.lambda_max[k - 1] - 1e-12;

    const HermitianMatrix flagship = toeplitz_matrix(counterexample_fock(3.5, 12), 20);
    double hermitian_dev = 0.0;
    for (int i = 0; i < flagship.degree; ++i)
        for (int j = 0; j < flagship.degree; ++j)
            hermitian_dev = std::max(
                hermitian_dev, std::abs(flagship.at(i, j) - std::conj(flagship.at(j, i))));
    const double psd_min = spectral_bounds(flagship).lambda_min;

    const double gauss_quad = berezin_transform(
        Measure::absolutely_continuous(Space::fock, density_gaussian(0.25)), Complex(1.0, 0.0));
    const double gauss_dev = std::abs(gauss_quad - gauss_closed);

    const bool invariants_ok = rho_dev <= 1e-12 && expansion_dev <= 1e-12 &&
                               norm_dev <= 1e-10 && interlacing && hermitian_dev == 0.0 &&
                               psd_min >= -1e-10 && gauss_dev <= 1e-8;
    c.pass = mc_ok && invariants_ok;
    c.detail = std::to_string(mc.size()) + " Monte Carlo closed-form comparisons, worst " +
               num(worst_sigma) + " sigma (" + worst_label +
               "; 3 allowed); invariants: Mobius rho dev " + num(rho_dev) +
               ", kernel expansion dev " + num(expansion_dev) + ", kernel norm dev " +
               num(norm_dev) + ", nested-block interlacing " +
               (interlacing ? "holds" : "fails") + ", flagship compression Hermitian dev " +
               num(hermitian_dev) + " with lambda_min " + num(psd_min) +
               " >= -1e-10, quadrature-vs-closed Gaussian Berezin dev " + num(gauss_dev);
}

}  // namespace

std::vector<AcceptanceCheck> run_acceptance(std::uint64_t mc_seed) {
    std::vector<AcceptanceCheck> out;
    out.push_back(guarded(1, "identity symbol: Berezin constant 1 and identity compression",
                          check_identity_symbol));
    out.push_back(guarded(2, "squaring map: closed-range chain and contraction control",
                          check_squaring_map));
    out.push_back(guarded(3, "radial density control: profile detects non-invertibility",
                          check_radial_density));
    out.push_back(guarded(4, "disk tail identity", check_disk_tail));
    out.push_back(guarded(5, "plane tail identity and lattice tail decay", check_plane_tail));
    out.push_back(guarded(6, "plane lattice counterexample: floor with spectral collapse",
                          check_fock_flagship));
    out.push_back(guarded(7, "disk ring counterexample: interpolation certificate",
                          check_bergman_flagship));
    out.push_back(guarded(8, "sampling-side control: stable spectral floor",
                          check_sampling_control));
    out.push_back(guarded(9, "Monte Carlo cross-validation and invariant battery",
                          [mc_seed](AcceptanceCheck& c) { check_battery(c, mc_seed); }));
    return out;
}

int print_acceptance(std::ostream& out, std::uint64_t mc_seed) {
    const std::vector<AcceptanceCheck> checks = run_acceptance(mc_seed);
    int passed = 0;
    for (const AcceptanceCheck& check : checks) {
        passed += check.pass ? 1 : 0;
        out << (check.pass ? "PASS" : "FAIL") << "  " << check.id << ". " << check.name
            << " (" << check.detail << ")\n";
    }
    out << passed << "/" << checks.size() << " acceptance checks passed\n";
    return passed == static_cast<int>(checks.size()) ? 0 : 1;
}

}  // namespace tlab
