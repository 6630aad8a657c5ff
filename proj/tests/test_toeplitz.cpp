#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "tlab/berezin.hpp"
#include "tlab/lattice.hpp"
#include "tlab/toeplitz.hpp"

using tlab::Atom;
using tlab::Complex;
using tlab::HermitianMatrix;
using tlab::Measure;
using tlab::PolySelfMap;
using tlab::Space;
using tlab::SpectralProfile;
using tlab::TruncationInfo;

namespace {

double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
    REQUIRE(a.degree == b.degree);
    double d = 0.0;
    for (std::size_t k = 0; k < a.entries.size(); ++k)
        d = std::max(d, std::abs(a.entries[k] - b.entries[k]));
    return d;
}

double identity_error(const HermitianMatrix& m) {
    double e = 0.0;
    for (int i = 0; i < m.degree; ++i)
        for (int j = 0; j < m.degree; ++j)
            e = std::max(e, std::abs(m.at(i, j) - (i == j ? 1.0 : 0.0)));
    return e;
}

PolySelfMap monomial_map(int power, double coefficient) {
    std::vector<Complex> c(static_cast<std::size_t>(power) + 1, Complex(0.0, 0.0));
    c.back() = Complex(coefficient, 0.0);
    return PolySelfMap{c};
}

}  // namespace

TEST_CASE("basis_eval: normalizations, domain, and overflow behavior") {
    CHECK(tlab::basis_eval(Space::bergman, 0, Complex(0.3, 0.2)) ==
          Complex(1.0, 0.0));
    CHECK(tlab::basis_eval(Space::bergman, 1, Complex(0.5, 0.0)).real() ==
          doctest::Approx(std::sqrt(2.0) * 0.5).epsilon(1e-12));
    // e_3(z) = 2 z^3 on the disk.
    const Complex z(0.4, -0.3);
    CHECK(std::abs(tlab::basis_eval(Space::bergman, 3, z) - 2.0 * z * z * z) < 1e-14);

    CHECK(tlab::basis_eval(Space::fock, 0, Complex(7.0, -2.0)) == Complex(1.0, 0.0));
    CHECK(tlab::basis_eval(Space::fock, 2, Complex(2.0, 0.0)).real() ==
          doctest::Approx(4.0 / std::sqrt(8.0)).epsilon(1e-12));
    CHECK(tlab::basis_eval(Space::fock, 5, Complex(0.0, 0.0)) == Complex(0.0, 0.0));

    CHECK_THROWS_AS(tlab::basis_eval(Space::bergman, 2, Complex(1.0, 0.0)),
                    std::domain_error);
    CHECK_THROWS_AS(tlab::basis_eval(Space::bergman, -1, Complex(0.0, 0.0)),
                    std::invalid_argument);
    // e_1(1e200) is representable, e_2(1e200) is not.
    CHECK(std::isfinite(std::abs(tlab::basis_eval(Space::fock, 1, Complex(1e200, 0.0)))));
    CHECK_THROWS_AS(tlab::basis_eval(Space::fock, 2, Complex(1e200, 0.0)),
                    std::overflow_error);
}

TEST_CASE("basis_eval: orthonormality under each space's inner product") {
    // Bergman: (n+1) 2 int_0^1 r^{2n+1} dr = 1 and cross terms vanish by symmetry;
    // checked through the compression of Lebesgue measure below.  Here, pointwise
    // kernel expansion: sum_n e_n(z) conj(e_n(w)) = 1/(1 - conj(w) z)^2.
    const Complex z(0.4, 0.1), w(-0.2, 0.3);
    Complex acc(0.0, 0.0);
    for (int n = 0; n < 200; ++n)
        acc += tlab::basis_eval(Space::bergman, n, z) *
               std::conj(tlab::basis_eval(Space::bergman, n, w));
    const Complex denom = 1.0 - std::conj(w) * z;
    CHECK(std::abs(acc - 1.0 / (denom * denom)) < 1e-12);

    // Fock: sum_n e_n(z) conj(e_n(w)) = exp(conj(w) z / 2).
    const Complex zf(1.2, -0.7), wf(0.5, 0.9);
    Complex accf(0.0, 0.0);
    for (int n = 0; n < 120; ++n)
        accf += tlab::basis_eval(Space::fock, n, zf) *
                std::conj(tlab::basis_eval(Space::fock, n, wf));
    CHECK(std::abs(accf - std::exp(std::conj(wf) * zf / 2.0)) < 1e-12);
}

TEST_CASE("toeplitz_matrix: Lebesgue measure compresses to the identity") {
    const auto bergman =
        tlab::toeplitz_matrix(Measure::absolutely_continuous(Space::bergman, tlab::density_one()), 30);
    CHECK(bergman.degree == 30);
    CHECK(identity_error(bergman) < 1e-12);

    const auto fock =
        tlab::toeplitz_matrix(Measure::absolutely_continuous(Space::fock, tlab::density_one()), 30);
    CHECK(identity_error(fock) < 1e-12);
    CHECK(fock.truncation_bound == 0.0);

    CHECK_THROWS_AS(tlab::toeplitz_matrix(
                        Measure::absolutely_continuous(Space::bergman, tlab::density_one()), 0),
                    std::invalid_argument);
}

TEST_CASE("toeplitz_matrix: point mass at the origin") {
    const auto m = tlab::toeplitz_matrix(
        Measure::atomic(Space::bergman, {{Complex(0.0, 0.0), 1.0}}), 12);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            CHECK(m.at(i, j) == Complex(i == 0 && j == 0 ? 1.0 : 0.0, 0.0));

    // Fock point mass picks up the pairing's 1/2.
    const auto f = tlab::toeplitz_matrix(
        Measure::atomic(Space::fock, {{Complex(0.0, 0.0), 1.0}}), 6);
    CHECK(f.at(0, 0) == Complex(0.5, 0.0));
    for (int i = 1; i < 6; ++i) CHECK(std::abs(f.at(i, i)) == 0.0);
}

TEST_CASE("toeplitz_matrix: radial densities give the classical diagonals") {
    // density 1 - |z|^2: entries (n+1) 2 int (1-r^2) r^{2n+1} dr = 1/(n+2).
    const auto m = tlab::toeplitz_matrix(
        Measure::absolutely_continuous(Space::bergman, tlab::density_one_minus_abs2()), 20);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            if (i == j)
                CHECK(m.at(i, i).real() == doctest::Approx(1.0 / (i + 2)).epsilon(1e-10));
            else
                CHECK(std::abs(m.at(i, j)) < 1e-12);
        }

    // Pull-back under z^2: diagonal (n+1)/(2n+1), off-diagonal killed by symmetry.
    const auto p = tlab::toeplitz_matrix(Measure::pull_back(monomial_map(2, 1.0)), 20);
    CHECK(p.provenance == "bergman pullback degree 2");
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            if (i == j)
                CHECK(p.at(i, i).real() ==
                      doctest::Approx((i + 1.0) / (2 * i + 1)).epsilon(1e-10));
            else
                CHECK(std::abs(p.at(i, j)) < 1e-10);
        }
}

TEST_CASE("toeplitz_matrix: Hermitian, PSD, and order-independent assembly") {
    const Measure mu = tlab::counterexample_fock(3.5, 6);
    const auto m = tlab::toeplitz_matrix(mu, 10);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            CHECK(std::abs(m.at(i, j) - std::conj(m.at(j, i))) == 0.0);
    const auto bounds = tlab::spectral_bounds(m);
    CHECK(bounds.lambda_min >= -1e-10);
    CHECK(bounds.lambda_max >= bounds.lambda_min);

    // Compensated accumulation makes atom order immaterial.
    auto atoms = mu.atoms();
    std::mt19937 rng(7);
    std::shuffle(atoms.begin(), atoms.end(), rng);
    const auto shuffled =
        tlab::toeplitz_matrix(Measure::atomic(Space::fock, atoms, mu.truncation()), 10);
    CHECK(max_abs_diff(m, shuffled) < 1e-14);

    // Same property for a plain (untruncated) Bergman cloud.
    std::vector<Atom> cloud;
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int k = 0; k < 200; ++k) cloud.push_back({Complex(u(gen), u(gen)), 0.01 * (k + 1)});
    auto cloud2 = cloud;
    std::shuffle(cloud2.begin(), cloud2.end(), gen);
    const auto a = tlab::toeplitz_matrix(Measure::atomic(Space::bergman, cloud), 8);
    const auto b = tlab::toeplitz_matrix(Measure::atomic(Space::bergman, cloud2), 8);
    CHECK(max_abs_diff(a, b) < 1e-14);
}

TEST_CASE("toeplitz_matrix: Fock window truncation records an honest bound") {
    // Window cut for degree N keeps |p| <= sqrt(2N) + 6.  At N = 2 the cut is 8;
    // an atom at 8.01 is dropped, and for a single dropped atom at l = |p|^2/2 the
    // recorded Poisson-peak bound 0.5 w l^{N-1} e^{-l} / (N-1)! equals the atom's
    // true largest entry contribution 0.5 w |u_{N-1}(p)|^2.
    TruncationInfo info;
    info.kind = TruncationInfo::Kind::fock_window;
    info.window_halfside = 20.0;
    const Measure mu = Measure::atomic(
        Space::fock, {{Complex(0.0, 0.0), 1.0}, {Complex(8.01, 0.0), 100.0}}, info);
    const auto m = tlab::toeplitz_matrix(mu, 2);
    const double l = 0.5 * 8.01 * 8.01;
    const double expected = 0.5 * 100.0 * l * std::exp(-l);
    CHECK(m.truncation_bound == doctest::Approx(expected).epsilon(1e-12));
    CHECK(m.truncation_bound > 1e-12);
    CHECK(m.truncation_bound < 1e-9);

    const Measure full = Measure::atomic(Space::fock, mu.atoms());
    const auto mf = tlab::toeplitz_matrix(full, 2);
    CHECK(mf.truncation_bound == 0.0);
    const double diff = max_abs_diff(m, mf);
    CHECK(diff > 0.0);
    CHECK(diff <= m.truncation_bound * (1.0 + 1e-12));

    // The flagship lattice at N = 8 keeps only the 25 atoms near the origin, and
    // the neglected 600 change no entry beyond the recorded bound plus rounding.
    const Measure ce = tlab::counterexample_fock(3.5, 12);
    const auto t = tlab::toeplitz_matrix(ce, 8);
    CHECK(t.provenance == "fock atomic (625 atoms)");
    CHECK(t.truncation_bound > 0.0);
    CHECK(t.truncation_bound < 1e-12);
    const auto tf = tlab::toeplitz_matrix(Measure::atomic(Space::fock, ce.atoms()), 8);
    CHECK(max_abs_diff(t, tf) <= t.truncation_bound + 1e-14);
}

TEST_CASE("toeplitz_matrix: Bergman ring truncation drops negligible weight classes") {
    // Two rings of four atoms; the second carries weight 1e-20, far below the
    // class cutoff mass * (N+1) >= 1e-12 * included, so it is dropped with the
    // per-atom bound w (N+1) recorded.
    std::vector<Atom> atoms;
    for (int k = 0; k < 4; ++k) {
        const double th = 0.25 * std::acos(-1.0) + 0.5 * std::acos(-1.0) * k;
        atoms.push_back({0.5 * Complex(std::cos(th), std::sin(th)), 1.0});
    }
    for (int k = 0; k < 4; ++k) {
        const double th = 0.5 * std::acos(-1.0) * k;
        atoms.push_back({0.9 * Complex(std::cos(th), std::sin(th)), 1e-20});
    }
    TruncationInfo info;
    info.kind = TruncationInfo::Kind::bergman_rings;
    const auto m = tlab::toeplitz_matrix(Measure::atomic(Space::bergman, atoms, info), 10);
    CHECK(m.truncation_bound == doctest::Approx(4e-20 * 11).epsilon(1e-12));
    const auto full = tlab::toeplitz_matrix(Measure::atomic(Space::bergman, atoms), 10);
    CHECK(max_abs_diff(m, full) <= std::max(m.truncation_bound, 1e-15));

    // The three-ring counterexample keeps every ring at desk degrees.
    const Measure ce = tlab::counterexample_bergman(3.5, 3);
    const auto t = tlab::toeplitz_matrix(ce, 10);
    CHECK(t.truncation_bound == 0.0);
    CHECK(max_abs_diff(t, tlab::toeplitz_matrix(Measure::atomic(Space::bergman, ce.atoms()), 10)) ==
          0.0);
}

TEST_CASE("spectral_bounds: diagonal fixtures and non-Hermitian rejection") {
    const auto identity =
        tlab::toeplitz_matrix(Measure::absolutely_continuous(Space::bergman, tlab::density_one()), 10);
    const auto ib = tlab::spectral_bounds(identity);
    CHECK(ib.lambda_min == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ib.lambda_max == doctest::Approx(1.0).epsilon(1e-10));

    const auto dm = tlab::spectral_bounds(tlab::toeplitz_matrix(
        Measure::absolutely_continuous(Space::bergman, tlab::density_one_minus_abs2()), 10));
    CHECK(dm.lambda_min == doctest::Approx(1.0 / 11).epsilon(1e-10));
    CHECK(dm.lambda_max == doctest::Approx(0.5).epsilon(1e-10));

    // diag((n+1)/(2n+1)) reaches 11/21 when the block includes n = 10.
    const auto pb = tlab::spectral_bounds(
        tlab::toeplitz_matrix(Measure::pull_back(monomial_map(2, 1.0)), 11));
    CHECK(pb.lambda_min == doctest::Approx(11.0 / 21).epsilon(1e-10));
    CHECK(pb.lambda_max == doctest::Approx(1.0).epsilon(1e-10));

    HermitianMatrix bad;
    bad.space = Space::bergman;
    bad.degree = 2;
    bad.entries = {Complex(1, 0), Complex(0.5, 0), Complex(0.1, 0), Complex(1, 0)};
    CHECK_THROWS_AS(tlab::spectral_bounds(bad), std::invalid_argument);
}

TEST_CASE("invertibility_profile: closed-form profiles and interlacing") {
    // Lebesgue: constant 1.
    const auto flat = tlab::invertibility_profile(
        Measure::absolutely_continuous(Space::bergman, tlab::density_one()), {5, 10, 20});
    for (std::size_t i = 0; i < flat.degrees.size(); ++i) {
        CHECK(flat.lambda_min[i] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(flat.lambda_max[i] == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(flat.note.find("nested principal blocks") != std::string::npos);

    // 1 - |z|^2: lambda_min(N) = 1/(N+1) -> 0 (the compression detects
    // non-invertibility); lambda_max stays at 1/2.
    const auto dec = tlab::invertibility_profile(
        Measure::absolutely_continuous(Space::bergman, tlab::density_one_minus_abs2()),
        {5, 10, 20});
    CHECK(dec.lambda_min[0] == doctest::Approx(1.0 / 6).epsilon(1e-10));
    CHECK(dec.lambda_min[1] == doctest::Approx(1.0 / 11).epsilon(1e-10));
    CHECK(dec.lambda_min[2] == doctest::Approx(1.0 / 21).epsilon(1e-10));

    // z^2 pull-back: lambda_min(N) = N/(2N-1) stays above 1/2 (closed range).
    const auto pb = tlab::invertibility_profile(Measure::pull_back(monomial_map(2, 1.0)),
                                                {5, 10, 20, 60});
    for (std::size_t i = 0; i < pb.degrees.size(); ++i) {
        const int n = pb.degrees[i];
        CHECK(pb.lambda_min[i] == doctest::Approx(n / (2.0 * n - 1)).epsilon(1e-10));
        CHECK(pb.lambda_min[i] > 0.5);
    }

    // Interlacing: nested blocks make both sequences monotone.
    const auto prof = tlab::invertibility_profile(tlab::counterexample_fock(3.5, 6),
                                                  {2, 4, 6, 8, 10, 12});
    for (std::size_t i = 1; i < prof.degrees.size(); ++i) {
        CHECK(prof.lambda_min[i] <= prof.lambda_min[i - 1] + 1e-12);
        CHECK(prof.lambda_max[i] >= prof.lambda_max[i - 1] - 1e-12);
    }
    for (const double lm : prof.lambda_min) CHECK(lm >= -1e-10);

    CHECK_THROWS_AS(tlab::invertibility_profile(
                        Measure::absolutely_continuous(Space::bergman, tlab::density_one()),
                        {10, 10}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tlab::invertibility_profile(
                        Measure::absolutely_continuous(Space::bergman, tlab::density_one()), {}),
                    std::invalid_argument);
}

TEST_CASE("invertibility_profile: z/2 pull-back decays like 4^{-N}") {
    // e_n(z/2) = 2^{-n} e_n(z), so the compression is diag(4^{-n}) and
    // lambda_min(N) = 4^{1-N}: the fitted constant at N = 5 extends exactly.
    const auto prof =
        tlab::invertibility_profile(Measure::pull_back(monomial_map(1, 0.5)), {5, 10, 15});
    const double fitted = prof.lambda_min[0] * std::pow(4.0, 5);
    for (std::size_t i = 0; i < prof.degrees.size(); ++i) {
        const double model = fitted * std::pow(4.0, -prof.degrees[i]);
        CHECK(prof.lambda_min[i] > 0.5 * model);
        CHECK(prof.lambda_min[i] < 2.0 * model);
    }
}

TEST_CASE("composition_matrix: monomial and contraction fixtures") {
    // phi(z) = z is the identity operator.
    const auto id = tlab::composition_matrix(monomial_map(1, 1.0), 8);
    for (int m = 0; m < 8; ++m)
        for (int n = 0; n < 8; ++n)
            CHECK(id.at(m, n) == Complex(m == n ? 1.0 : 0.0, 0.0));

    // phi(z) = z^2: column n has its only entry sqrt(n+1)/sqrt(2n+1) in row 2n.
    const auto sq = tlab::composition_matrix(monomial_map(2, 1.0), 12);
    for (int m = 0; m < 12; ++m)
        for (int n = 0; n < 12; ++n) {
            const double expected =
                (m == 2 * n) ? std::sqrt((n + 1.0) / (2 * n + 1.0)) : 0.0;
            CHECK(std::abs(sq.at(m, n) - expected) < 1e-14);
        }

    // phi(z) = z/2: diagonal 2^{-n}.
    const auto half = tlab::composition_matrix(monomial_map(1, 0.5), 10);
    for (int m = 0; m < 10; ++m)
        for (int n = 0; n < 10; ++n) {
            const double expected = (m == n) ? std::pow(2.0, -n) : 0.0;
            CHECK(std::abs(half.at(m, n) - expected) < 1e-14);
        }

    // Non-self-maps are rejected by the certification grid.
    CHECK_THROWS_AS(tlab::composition_matrix(monomial_map(1, 1.2), 5), std::invalid_argument);
    CHECK_THROWS_AS(tlab::composition_matrix(PolySelfMap{{Complex(0.5, 0.0)}}, 5),
                    std::invalid_argument);
}

TEST_CASE("composition_matrix: quadrature cross-check for a non-monomial map") {
    // phi(z) = (z + z^2)/2: entries <e_n o phi, e_m> computed independently by
    // disk quadrature against the exact coefficient convolution.
    const PolySelfMap phi{{Complex(0, 0), Complex(0.5, 0), Complex(0.5, 0)}};
    const int degree = 6;
    const auto c = tlab::composition_matrix(phi, degree);
    const tlab::QuadratureSpec spec;
    for (int m = 0; m < degree; ++m) {
        for (int n = 0; n < degree; ++n) {
            const auto integral = tlab::integrate_disk(
                [&](Complex w) {
                    return tlab::basis_eval(Space::bergman, n, phi.eval(w)) *
                           std::conj(tlab::basis_eval(Space::bergman, m, w));
                },
                spec);
            CHECK(std::abs(c.at(m, n) - integral.value) < 1e-12);
        }
    }
}

TEST_CASE("pullback_identity_residual: C*C equals the pull-back compression") {
    CHECK(tlab::pullback_identity_residual(monomial_map(1, 1.0), 12) < 1e-14);
    CHECK(tlab::pullback_identity_residual(monomial_map(2, 1.0), 10) < 1e-10);
    CHECK(tlab::pullback_identity_residual(monomial_map(1, 0.5), 10) < 1e-12);

    // Truncated Moebius map phi_a(z) = (a - z)/(1 - a z), a = 0.5, to 32 terms:
    // coefficients a, then -(1-a^2) a^{k-1}.
    std::vector<Complex> c(33, Complex(0.0, 0.0));
    c[0] = Complex(0.5, 0.0);
    for (int k = 1; k <= 32; ++k)
        c[static_cast<std::size_t>(k)] = Complex(-0.75 * std::pow(0.5, k - 1), 0.0);
    CHECK(tlab::pullback_identity_residual(PolySelfMap{c}, 10) < 1e-6);

    // High-degree map at high degree: the composition block is capped at 4096
    // rows, the Parseval tail bound (about 2e-3 here) exceeds tolerance, and the
    // check refuses to report a residual it cannot certify.
    CHECK_THROWS_AS(tlab::pullback_identity_residual(monomial_map(401, 0.99), 12),
                    std::runtime_error);
}

TEST_CASE("berezin_vs_form_check: the compression reproduces the Berezin transform") {
    // Lebesgue measure: the form of any truncated kernel is exactly 1.
    const Measure flat = Measure::absolutely_continuous(Space::bergman, tlab::density_one());
    CHECK(tlab::berezin_vs_form_check(flat, {Complex(0.3, 0.4), Complex(-0.7, 0.1)}, 30) <
          1e-8);

    // Point mass at 0, probe 0.5: closed form (1 - 0.25)^2 = 0.5625.
    const Measure atom = Measure::atomic(Space::bergman, {{Complex(0.0, 0.0), 1.0}});
    CHECK(tlab::berezin_vs_form_check(atom, {Complex(0.5, 0.0)}, 40) < 1e-6);
    CHECK(tlab::berezin_transform(atom, Complex(0.5, 0.0)) ==
          doctest::Approx(0.5625).epsilon(1e-12));

    // Fock point mass at 0, probe 0: both sides are exactly 1/2.
    const Measure fatom = Measure::atomic(Space::fock, {{Complex(0.0, 0.0), 1.0}});
    CHECK(tlab::berezin_vs_form_check(fatom, {Complex(0.0, 0.0)}, 40) < 1e-10);

    // Flagship lattice: matrix form against the lattice Gaussian sum.
    const Measure ce = tlab::counterexample_fock(3.5, 12);
    CHECK(tlab::berezin_vs_form_check(
              ce, {Complex(0.0, 0.0), Complex(1.75, 1.75), Complex(1.0, 0.5)}, 40) < 1e-8);

    CHECK_THROWS_AS(tlab::berezin_vs_form_check(flat, {}, 10), std::invalid_argument);
    CHECK_THROWS_AS(tlab::berezin_vs_form_check(flat, {Complex(2.0, 0.0)}, 10),
                    std::domain_error);
}

TEST_CASE("spectral bounds bracket every truncated-kernel Rayleigh quotient") {
    const Measure mu = tlab::counterexample_fock(3.5, 6);
    const int degree = 14;
    const auto m = tlab::toeplitz_matrix(mu, degree);
    const auto bounds = tlab::spectral_bounds(m);
    for (const Complex z : {Complex(0.0, 0.0), Complex(1.75, 0.0), Complex(2.5, 1.0)}) {
        // Rayleigh quotient of the truncated kernel coefficient vector.
        std::vector<Complex> v(static_cast<std::size_t>(degree));
        for (int n = 0; n < degree; ++n) v[static_cast<std::size_t>(n)] =
            std::conj(tlab::basis_eval(Space::fock, n, z));
        Complex form(0.0, 0.0);
        double norm2 = 0.0;
        for (int i = 0; i < degree; ++i) {
            norm2 += std::norm(v[static_cast<std::size_t>(i)]);
            for (int j = 0; j < degree; ++j)
                form += std::conj(v[static_cast<std::size_t>(i)]) * m.at(i, j) *
                        v[static_cast<std::size_t>(j)];
        }
        const double q = form.real() / norm2;
        CHECK(bounds.lambda_min <= q + 1e-8);
        CHECK(q <= bounds.lambda_max + 1e-8);
    }
}

TEST_CASE("rotational symmetry diagonalizes by residue class") {
    // The 9x9 window of the spacing-3.5 lattice is invariant under multiplication
    // by i, so entries with m != n (mod 4) vanish.
    const auto m = tlab::toeplitz_matrix(tlab::counterexample_fock(3.5, 4), 12);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            if (((i - j) % 4 + 4) % 4 != 0) CHECK(std::abs(m.at(i, j)) < 1e-12);
}

TEST_CASE("flagship profiles: supercritical collapse against subcritical stability") {
    // Supercritical spacing 3.5 > sqrt(2 pi): lambda_min collapses by ten orders
    // of magnitude between N = 10 and N = 20 already.
    const auto super =
        tlab::invertibility_profile(tlab::counterexample_fock(3.5, 12), {10, 20});
    CHECK(super.lambda_min[0] < 1e-4);
    CHECK(super.lambda_min[0] > 1e-7);
    CHECK(super.lambda_min[1] < 0.2 * super.lambda_min[0]);

    // Subcritical spacing 1.8 < sqrt(2 pi) with the same unit weights: lambda_min
    // stays within a few percent of its N = 10 value.
    const auto seq = tlab::square_lattice(1.8, 10);
    std::vector<Atom> atoms;
    for (const Complex p : seq.points) atoms.push_back({p, 1.0});
    TruncationInfo info;
    info.kind = TruncationInfo::Kind::fock_window;
    info.window_halfside = 18.0;
    info.lattice_spacing = 1.8;
    const auto sub = tlab::invertibility_profile(
        Measure::atomic(Space::fock, atoms, info), {10, 20});
    CHECK(sub.lambda_min[0] > 0.8);
    CHECK(sub.lambda_min[1] > 0.95 * sub.lambda_min[0]);
}
