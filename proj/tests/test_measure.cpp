#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "tlab/measure.hpp"

using tlab::Complex;
using tlab::Measure;

namespace {

Measure lattice_35() {
    // Square lattice of spacing 3.5 with unit weights, truncated to |a| <= 20.
    std::vector<tlab::Atom> atoms;
    for (int m = -6; m <= 6; ++m) {
        for (int n = -6; n <= 6; ++n) {
            const Complex p(3.5 * m, 3.5 * n);
            if (std::abs(p) <= 20.0) atoms.push_back({p, 1.0});
        }
    }
    return Measure::atomic(tlab::Space::fock, std::move(atoms));
}

}  // namespace

TEST_CASE("atomic integration is an exact weighted sum") {
    const Measure mu = Measure::atomic(
        tlab::Space::bergman, {{Complex(0.0, 0.0), 1.0}, {Complex(0.5, 0.0), 2.0}});
    const tlab::Integral i = integrate(mu, [](Complex z) { return z * z + Complex(1.0, 0.0); });
    CHECK(i.value.real() == doctest::Approx(1.0 + 2.0 * 1.25).epsilon(1e-15));
    CHECK(mu.total_weight() == doctest::Approx(3.0));
    CHECK(mu.scaled(2.0).total_weight() == doctest::Approx(6.0));
}

TEST_CASE("Lebesgue measure on the disk integrates to one") {
    const Measure dA = Measure::absolutely_continuous(tlab::Space::bergman, tlab::density_one());
    CHECK(integrate(dA, [](Complex) { return Complex(1.0, 0.0); }).real() ==
          doctest::Approx(1.0).epsilon(1e-13));
    // Weighted density (1 - |z|^2): total mass 1/2.
    const Measure w = Measure::absolutely_continuous(tlab::Space::bergman,
                                                     tlab::density_one_minus_abs2());
    CHECK(integrate(w, [](Complex) { return Complex(1.0, 0.0); }).real() ==
          doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("Fock Lebesgue measure: Gaussian integrand matches the closed form") {
    const Measure dA = Measure::absolutely_continuous(tlab::Space::fock, tlab::density_one());
    const tlab::Integral i =
        integrate(dA, [](Complex w) { return Complex(std::exp(-0.5 * std::norm(w)), 0.0); });
    CHECK(i.real() == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("mass of pseudo-hyperbolic disks") {
    const Measure dA = Measure::absolutely_continuous(tlab::Space::bergman, tlab::density_one());
    const tlab::PseudoDisk e = tlab::pseudo_disk(0.5, 0.5);
    CHECK(tlab::mass_in(dA, e) == doctest::Approx(e.area).epsilon(1e-13));

    const Measure delta = Measure::atomic(tlab::Space::bergman, {{Complex(0.0, 0.0), 1.0}});
    CHECK(tlab::mass_in(delta, tlab::pseudo_disk(0.5, 0.6)) == 1.0);  // rho(0.5, 0) = 0.5 < 0.6
    CHECK(tlab::mass_in(delta, e) == 0.0);  // disks are open: rho = 0.5 is outside E(0.5, 0.5)
    CHECK(tlab::mass_in(delta, tlab::pseudo_disk(0.9, 0.5)) == 0.0);  // rho(0.9, 0) = 0.9
    // Additivity over disjoint regions (atomic, exact).
    const Measure two = Measure::atomic(
        tlab::Space::bergman, {{Complex(0.0, 0.0), 1.0}, {Complex(0.8, 0.0), 0.25}});
    const tlab::PseudoDisk e1 = tlab::pseudo_disk(Complex(0.0, 0.0), 0.3);
    const tlab::PseudoDisk e2 = tlab::pseudo_disk(Complex(0.8, 0.0), 0.3);
    CHECK(tlab::mass_in(two, e1) + tlab::mass_in(two, e2) == doctest::Approx(1.25));
}

TEST_CASE("mass of Euclidean balls against a truncated lattice: brute-force counts") {
    const Measure nu = lattice_35();
    // Balls are open: at radius 3.5 the four axis neighbors sit on the
    // boundary and are excluded.
    CHECK(tlab::mass_in(nu, tlab::EuclideanDisk{Complex(0.0, 0.0), 3.5}) == 1.0);
    CHECK(tlab::mass_in(nu, tlab::EuclideanDisk{Complex(0.0, 0.0), 3.5000001}) == 5.0);
    // The 3x3 block enters once the corners (distance 3.5 sqrt 2) are inside.
    CHECK(tlab::mass_in(nu, tlab::EuclideanDisk{Complex(0.0, 0.0), 4.9498}) == 9.0);
    // Cell center sees the four surrounding atoms at distance 3.5/sqrt 2.
    CHECK(tlab::mass_in(nu, tlab::EuclideanDisk{Complex(1.75, 1.75), 3.5}) == 4.0);
}

TEST_CASE("pull-back measures integrate through the self-map") {
    tlab::PolySelfMap sq{{Complex(0, 0), Complex(0, 0), Complex(1, 0)}};  // z^2
    const Measure mu = Measure::pull_back(sq);
    std::mt19937_64 rng(5);
    auto u = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Complex> coeff(6);
        for (Complex& c : coeff) c = Complex(u(), u());
        auto f = [&](Complex z) {
            Complex acc(0, 0);
            for (std::size_t k = coeff.size(); k-- > 0;) acc = acc * z + coeff[k];
            return acc;
        };
        const Complex lhs = integrate(mu, f).value;
        const Complex rhs = tlab::integrate_disk([&](Complex w) { return f(w * w); }).value;
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }

    // phi(z) = z/2 pushes everything into B(0, 1/2): a pseudo-disk far from
    // it has zero pulled-back mass, exactly.
    tlab::PolySelfMap half{{Complex(0, 0), Complex(0.5, 0)}};
    const Measure mh = Measure::pull_back(half);
    CHECK(tlab::mass_in(mh, tlab::pseudo_disk(0.8, 0.1)) == 0.0);
}

TEST_CASE("condition (M) evaluates finite for admissible measures") {
    const Measure dA = Measure::absolutely_continuous(tlab::Space::fock, tlab::density_one());
    const std::vector<Complex> probes{Complex(0, 0), Complex(1.0, 0.5), Complex(-2.0, 1.0)};
    const tlab::ConditionMReport rep = tlab::condition_m_check(dA, probes);
    REQUIRE(rep.probes.size() == 3);
    CHECK(rep.pass);
    CHECK(rep.probes[0].value == doctest::Approx(2.0).epsilon(1e-9));
    // I |K_z|^2 e^{-|w|^2/2} dA = 2 exp(|z|^2 / 2).
    CHECK(rep.probes[1].value == doctest::Approx(2.0 * std::exp(0.625)).epsilon(1e-9));

    const tlab::ConditionMReport atomic_rep = tlab::condition_m_check(lattice_35(), probes);
    CHECK(atomic_rep.pass);
    CHECK(atomic_rep.probes[0].value > 1.0);  // the origin atom contributes exactly 1

    const Measure disk = Measure::absolutely_continuous(tlab::Space::bergman, tlab::density_one());
    CHECK_THROWS_AS(tlab::condition_m_check(disk, probes), std::invalid_argument);
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(Measure::atomic(tlab::Space::bergman, {{Complex(0.5, 0.0), -1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Measure::atomic(tlab::Space::bergman, {{Complex(1.5, 0.0), 1.0}}),
                    std::domain_error);
    CHECK_THROWS_AS(Measure::atomic(tlab::Space::bergman, {}), std::invalid_argument);
    // Atoms anywhere on the plane are fine for Fock measures.
    CHECK_NOTHROW(Measure::atomic(tlab::Space::fock, {{Complex(15.0, -3.0), 1.0}}));

    // Negative density.
    CHECK_THROWS_AS(Measure::absolutely_continuous(
                        tlab::Space::bergman,
                        tlab::density_custom([](Complex z) { return z.real(); })),
                    std::invalid_argument);
    // Not a strict self-map / constant self-map.
    CHECK_THROWS_AS(Measure::pull_back({{Complex(0, 0), Complex(1.2, 0)}}), std::invalid_argument);
    CHECK_THROWS_AS(Measure::pull_back({{Complex(0.3, 0)}}), std::invalid_argument);

    const Measure fock_atoms = Measure::atomic(tlab::Space::fock, {{Complex(0, 0), 1.0}});
    CHECK_THROWS_AS(tlab::mass_in(fock_atoms, tlab::pseudo_disk(0.5, 0.5)),
                    std::invalid_argument);
    const Measure disk_atoms = Measure::atomic(tlab::Space::bergman, {{Complex(0, 0), 1.0}});
    CHECK_THROWS_AS(tlab::mass_in(disk_atoms, tlab::EuclideanDisk{Complex(0, 0), 1.0}),
                    std::invalid_argument);
}

TEST_CASE("measure JSON: parse, reject, round-trip") {
    const Measure ac = tlab::measure_from_json(
        R"({"space":"bergman","kind":"ac","density":"one"})");
    CHECK(ac.kind() == Measure::Kind::absolutely_continuous);
    CHECK(ac.density().name == "one");

    // Space supplied externally (as the CLI does with --space).
    const Measure ac2 =
        tlab::measure_from_json(R"({"kind":"ac","density":"one"})", tlab::Space::fock);
    CHECK(ac2.space() == tlab::Space::fock);
    CHECK_THROWS_AS(tlab::measure_from_json(R"({"kind":"ac","density":"one"})"),
                    std::invalid_argument);

    const Measure param = tlab::measure_from_json(
        R"({"space":"fock","kind":"ac","density":{"name":"gaussian","rate":0.5}})");
    CHECK(param.density().params.at("rate") == 0.5);

    const Measure at = tlab::measure_from_json(
        R"({"space":"fock","kind":"atomic","atoms":[[0,0,1],[3.5,0,2]]})");
    CHECK(at.atoms().size() == 2);
    CHECK(at.atoms()[1].weight == 2.0);

    const Measure pb = tlab::measure_from_json(
        R"({"space":"bergman","kind":"pullback","taylor":[0,[0.5,0]]})");
    CHECK(pb.kind() == Measure::Kind::pull_back);
    CHECK(pb.selfmap().degree() == 1);

    CHECK_THROWS_WITH_AS(
        tlab::measure_from_json(R"({"space":"bergman","kind":"ac","density":"one","extra":1})"),
        doctest::Contains("unknown field"), std::invalid_argument);
    CHECK_THROWS_AS(tlab::measure_from_json(R"({"space":"bergman","kind":"nope"})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(tlab::measure_from_json(R"({"space":"bergman","kind":"ac","atoms":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(tlab::measure_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(
        tlab::measure_from_json(R"({"space":"fock","kind":"pullback","taylor":[0,[0.5,0]]})"),
        std::invalid_argument);

    // Round trips: serialized form re-parses to the same measure.
    for (const Measure* m : {&ac, &param, &at, &pb}) {
        const std::string text = tlab::measure_to_json(*m);
        const Measure back = tlab::measure_from_json(text);
        CHECK(back.kind() == m->kind());
        CHECK(back.space() == m->space());
        CHECK(tlab::measure_to_json(back) == text);
    }
}
