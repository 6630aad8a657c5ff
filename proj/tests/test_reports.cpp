#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "tlab/reports.hpp"

using tlab::CarlesonReport;
using tlab::Complex;
using tlab::CounterexampleReport;
using tlab::GridRegion;
using tlab::GridReport;
using tlab::HermitianMatrix;
using tlab::Measure;
using tlab::Space;
using tlab::SpectralProfile;

namespace {

bool same_samples(const GridReport& a, const GridReport& b) {
    if (a.samples.size() != b.samples.size()) return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        if (a.samples[i].z != b.samples[i].z) return false;
        if (a.samples[i].value != b.samples[i].value) return false;
    }
    return true;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (const char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("grid reports round-trip through JSON and emit the documented CSV") {
    const Measure dA = Measure::absolutely_continuous(Space::bergman, tlab::density_one());
    const GridReport report = tlab::berezin_extrema(dA, GridRegion::bergman_disk(0.6), 8);
    REQUIRE(!report.samples.empty());

    const std::string text = tlab::grid_report_to_json(report);
    const GridReport back = tlab::grid_report_from_json(text);
    CHECK(back.region.rho_max == report.region.rho_max);
    CHECK(back.region.fock_rect == report.region.fock_rect);
    CHECK(back.radial == report.radial);
    CHECK(back.angular == report.angular);
    CHECK(back.nx == report.nx);
    CHECK(back.ny == report.ny);
    CHECK(back.inf_value == report.inf_value);  // bitwise: %.17g round-trips
    CHECK(back.sup_value == report.sup_value);
    CHECK(back.argmin == report.argmin);
    CHECK(back.argmax == report.argmax);
    CHECK(same_samples(back, report));
    // Serialization is deterministic.
    CHECK(tlab::grid_report_to_json(back) == text);

    const std::string csv = tlab::grid_report_to_csv(report);
    CHECK(csv.rfind("z_re,z_im,value\n", 0) == 0);
    CHECK(count_lines(csv) == report.samples.size() + 1);

    // Fock rectangle region variant.
    const Measure flat = Measure::absolutely_continuous(Space::fock, tlab::density_one());
    const GridReport fock =
        tlab::berezin_extrema(flat, GridRegion::fock_rectangle(Complex(-1, -1), Complex(1, 1)), 5);
    const GridReport fock_back = tlab::grid_report_from_json(tlab::grid_report_to_json(fock));
    CHECK(fock_back.region.fock_rect);
    CHECK(fock_back.region.lo == fock.region.lo);
    CHECK(fock_back.region.hi == fock.region.hi);
    CHECK(same_samples(fock_back, fock));

    CHECK_THROWS_AS(tlab::grid_report_from_json("{\"bogus\":1}"), std::invalid_argument);
    CHECK_THROWS_AS(tlab::grid_report_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(tlab::grid_report_from_json("[1,2]"), std::invalid_argument);
}

TEST_CASE("carleson reports round-trip with verdicts and semantics intact") {
    const Measure dA = Measure::absolutely_continuous(Space::bergman, tlab::density_one());
    tlab::ClassifyParams params;
    params.region = GridRegion::bergman_disk(0.7);
    params.r = 0.5;
    params.grid_density = 8;
    const CarlesonReport report = tlab::classify(dA, params);

    const std::string text = tlab::carleson_report_to_json(report);
    const CarlesonReport back = tlab::carleson_report_from_json(text);
    CHECK(back.space == report.space);
    CHECK(back.r_used == report.r_used);
    CHECK(back.sup_ratio == report.sup_ratio);
    CHECK(back.inf_ratio == report.inf_ratio);
    CHECK(back.arg_sup == report.arg_sup);
    CHECK(back.arg_inf == report.arg_inf);
    CHECK(back.grid == report.grid);
    CHECK(back.carleson_threshold == report.carleson_threshold);
    CHECK(back.reverse_threshold == report.reverse_threshold);
    CHECK(back.verdict_carleson == report.verdict_carleson);
    CHECK(back.verdict_reverse_condition == report.verdict_reverse_condition);
    CHECK(back.berezin_inf == report.berezin_inf);
    CHECK(back.berezin_sup == report.berezin_sup);
    CHECK(back.floor_constant == report.floor_constant);
    CHECK(back.berezin_floor == report.berezin_floor);
    CHECK(back.semantics == report.semantics);
    CHECK(tlab::carleson_report_to_json(back) == text);

    const std::string csv = tlab::carleson_report_to_csv(report);
    CHECK(csv.rfind("key,value\n", 0) == 0);
    CHECK(csv.find("verdict_reverse_condition,true") != std::string::npos);

    CHECK_THROWS_AS(tlab::carleson_report_from_json("{\"space\":\"bergman\",\"oops\":2}"),
                    std::invalid_argument);
}

TEST_CASE("spectral profiles round-trip and serialize the documented CSV schema") {
    const SpectralProfile profile = tlab::invertibility_profile(
        Measure::absolutely_continuous(Space::bergman, tlab::density_one_minus_abs2()),
        {5, 10, 20});

    const std::string text = tlab::profile_to_json(profile);
    const SpectralProfile back = tlab::profile_from_json(text);
    CHECK(back.degrees == profile.degrees);
    CHECK(back.lambda_min == profile.lambda_min);
    CHECK(back.lambda_max == profile.lambda_max);
    CHECK(back.truncation_bound == profile.truncation_bound);
    CHECK(back.note == profile.note);
    CHECK(tlab::profile_to_json(back) == text);

    const std::string csv = tlab::profile_to_csv(profile);
    CHECK(csv.rfind("degree,lambda_min,lambda_max\n", 0) == 0);
    CHECK(count_lines(csv) == 4);
    CHECK(csv.find("\n5,") != std::string::npos);

    CHECK_THROWS_AS(
        tlab::profile_from_json("{\"degrees\":[2],\"lambda_min\":[1,2],\"lambda_max\":[1],"
                                "\"truncation_bound\":0,\"note\":\"x\"}"),
        std::invalid_argument);
}

TEST_CASE("hermitian matrices round-trip with complex entries") {
    const Measure mu = Measure::atomic(
        Space::bergman, {{Complex(0.3, 0.4), 1.0}, {Complex(-0.2, 0.1), 0.5}});
    const HermitianMatrix matrix = tlab::toeplitz_matrix(mu, 6);

    const std::string text = tlab::matrix_to_json(matrix);
    const HermitianMatrix back = tlab::matrix_from_json(text);
    CHECK(back.space == matrix.space);
    CHECK(back.degree == matrix.degree);
    CHECK(back.provenance == matrix.provenance);
    CHECK(back.truncation_bound == matrix.truncation_bound);
    REQUIRE(back.entries.size() == matrix.entries.size());
    for (std::size_t i = 0; i < matrix.entries.size(); ++i)
        CHECK(back.entries[i] == matrix.entries[i]);
    CHECK(tlab::matrix_to_json(back) == text);

    const std::string csv = tlab::matrix_to_csv(matrix);
    CHECK(csv.rfind("m,n,re,im\n", 0) == 0);
    CHECK(count_lines(csv) == 37);

    CHECK_THROWS_AS(tlab::matrix_from_json(
                        "{\"space\":\"fock\",\"degree\":2,\"provenance\":\"x\","
                        "\"truncation_bound\":0,\"entries\":[[1,0]]}"),
                    std::invalid_argument);
}

TEST_CASE("fock counterexample bundle: certificates, floors, and collapse ratio") {
    const CounterexampleReport rep = tlab::counterexample_fock_report(3.5, 12, {10, 20});

    CHECK(rep.space == Space::fock);
    CHECK(rep.separation == doctest::Approx(3.5).epsilon(1e-12));
    // Covering of the square lattice is r/sqrt(2) plus the grid term.
    CHECK(rep.covering_upper >= 3.5 / std::sqrt(2.0));
    CHECK(rep.covering_upper < 3.5 / std::sqrt(2.0) + 0.1);
    CHECK(rep.condition_m);
    CHECK_FALSE(rep.interpolation_sufficient);

    // Reverse Carleson condition on the fundamental cell: masses land in [1, 4].
    CHECK(rep.carleson.r_used == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(rep.carleson.inf_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.carleson.sup_ratio == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(rep.carleson.verdict_reverse_condition);
    CHECK(rep.carleson.verdict_carleson);

    // Berezin floor: measured infimum beats the analytic covering bound.
    CHECK(rep.analytic_floor == doctest::Approx(0.5 * std::exp(-3.0625)).epsilon(1e-12));
    CHECK(rep.carleson.berezin_inf >= rep.analytic_floor);
    CHECK(rep.carleson.berezin_inf == doctest::Approx(0.09354213998).epsilon(1e-6));

    // Spectral collapse against the stable control.
    REQUIRE(rep.profile.degrees == std::vector<int>{10, 20});
    CHECK(rep.profile.lambda_min[1] < rep.profile.lambda_min[0]);
    CHECK(rep.profile_ratio < 0.1);
    CHECK(rep.control_ratio > 0.9);
    CHECK(rep.control_profile.lambda_min[0] > 0.8);
    CHECK(!rep.headline.empty());
    CHECK(rep.control_description.find("1.8") != std::string::npos);

    // Round-trip of the full bundle.
    const std::string text = tlab::counterexample_to_json(rep);
    const CounterexampleReport back = tlab::counterexample_from_json(text);
    CHECK(tlab::counterexample_to_json(back) == text);
    CHECK(back.profile.lambda_min == rep.profile.lambda_min);
    CHECK(back.carleson.semantics == rep.carleson.semantics);

    const std::string csv = tlab::counterexample_to_csv(rep);
    CHECK(csv.rfind("degree,lambda_min,lambda_max,control_lambda_min,control_lambda_max\n",
                    0) == 0);
    CHECK(count_lines(csv) == 3);
}
