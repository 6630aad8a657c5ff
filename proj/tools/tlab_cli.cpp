// toeplitz-lab: command-line front end for the laboratory.
//
// Subcommands: berezin, tail, carleson, lattice, spectrum,
// counterexample bergman|fock, verify.  Reports are emitted as JSON (one
// line, fixed field order, 17 significant digits) or CSV with the documented
// column schemas; identical invocations produce byte-identical artifacts.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tlab/acceptance.hpp"
#include "tlab/berezin.hpp"
#include "tlab/carleson.hpp"
#include "tlab/format.hpp"
#include "tlab/lattice.hpp"
#include "tlab/measure.hpp"
#include "tlab/quadrature.hpp"
#include "tlab/reports.hpp"
#include "tlab/toeplitz.hpp"

namespace {

// Options shared by the report-producing subcommands.
struct Common {
    std::string space = "bergman";
    std::string measure;
    int grid_density = 0;
    double rho_max = 0.95;
    double half_side = 2.0;
    double tol = 1e-10;
    std::string output = "-";
    std::string format = "csv";
};

void add_output_options(CLI::App* cmd, Common& opt) {
    cmd->add_option("--output", opt.output, "output path, or - for stdout")
        ->capture_default_str();
    cmd->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

void add_common_options(CLI::App* cmd, Common& opt, bool needs_measure) {
    cmd->add_option("--space", opt.space, "bergman or fock")
        ->check(CLI::IsMember({"bergman", "fock"}))
        ->capture_default_str();
    CLI::Option* m = cmd->add_option(
        "--measure", opt.measure,
        "measure spec: inline JSON, or @path to read a JSON file");
    if (needs_measure) m->required();
    cmd->add_option("--grid-density", opt.grid_density,
                    "grid density (0 = module default)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--rho-max", opt.rho_max,
                    "Bergman sweep region: closed disk rho <= rho-max")
        ->capture_default_str();
    cmd->add_option("--half-side", opt.half_side,
                    "Fock sweep region: square [-h, h] x [-h, h]")
        ->capture_default_str();
    cmd->add_option("--tol", opt.tol, "quadrature doubling tolerance")
        ->capture_default_str();
    add_output_options(cmd, opt);
}

tlab::Space parse_space(const std::string& s) { return tlab::space_from_string(s); }

tlab::Measure load_measure(const Common& opt) {
    std::string text = opt.measure;
    if (!text.empty() && text[0] == '@') {
        const std::string path = text.substr(1);
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read measure file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return tlab::measure_from_json(text, parse_space(opt.space));
}

tlab::GridRegion region_for(tlab::Space space, const Common& opt) {
    if (space == tlab::Space::bergman) return tlab::GridRegion::bergman_disk(opt.rho_max);
    return tlab::GridRegion::fock_rectangle({-opt.half_side, -opt.half_side},
                                            {opt.half_side, opt.half_side});
}

tlab::QuadratureSpec quad_spec(const Common& opt) {
    tlab::QuadratureSpec spec;
    spec.tolerance = opt.tol;
    return spec;
}

void emit(const std::string& payload, const std::string& path) {
    std::string body = payload;
    if (body.empty() || body.back() != '\n') body += '\n';
    if (path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << body;
}

// Lattice certification artifact.  JSON carries the certificates and the
// point list; CSV is the plot-ready point table "z_re,z_im".
std::string lattice_json(const tlab::PointSequence& seq) {
    using tlab::g17;
    std::ostringstream out;
    out << "{\"space\":\"" << tlab::to_string(seq.space) << "\",\"metric\":\""
        << tlab::to_string(seq.metric) << "\",\"count\":" << seq.points.size()
        << ",\"separation\":" << g17(seq.separation)
        << ",\"covering_radius\":" << g17(seq.covering_radius)
        << ",\"covering_bound\":" << g17(seq.covering_bound)
        << ",\"certified\":" << (seq.certified ? "true" : "false");
    if (seq.space == tlab::Space::bergman) {
        out << ",\"beta_separation\":" << g17(seq.beta_separation)
            << ",\"beta_covering_bound\":" << g17(seq.beta_covering_bound);
        if (seq.certified) {  // the sufficient-condition checks require a certificate
            out << ",\"interpolation_sufficient\":"
                << (tlab::interpolation_sufficient(seq) ? "true" : "false")
                << ",\"sampling_sufficient\":"
                << (tlab::sampling_sufficient(seq) ? "true" : "false");
        }
    }
    out << ",\"points\":[";
    bool first = true;
    for (const tlab::Complex& p : seq.points) {
        if (!first) out << ",";
        first = false;
        out << "[" << g17(p.real()) << "," << g17(p.imag()) << "]";
    }
    out << "]}";
    return out.str();
}

std::string lattice_csv(const tlab::PointSequence& seq) {
    std::ostringstream out;
    out << "z_re,z_im\n";
    for (const tlab::Complex& p : seq.points)
        out << tlab::g17(p.real()) << "," << tlab::g17(p.imag()) << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toeplitz-lab: Toeplitz operators with measure symbols on the "
                 "Bergman and Fock spaces"};
    app.require_subcommand(1);

    Common berezin_opt, tail_opt, carleson_opt, spectrum_opt;
    double tail_r = 0.5;
    double carleson_r = 0.0;
    std::vector<int> spectrum_degrees;

    CLI::App* berezin = app.add_subcommand(
        "berezin", "sweep the Berezin transform of a measure over a grid");
    add_common_options(berezin, berezin_opt, true);

    CLI::App* tail = app.add_subcommand(
        "tail", "sweep the Carleson tail functional of a measure over a grid");
    add_common_options(tail, tail_opt, true);
    tail->add_option("--r", tail_r, "tail radius (rho on the disk, Euclidean on the plane)")
        ->capture_default_str();

    CLI::App* carleson = app.add_subcommand(
        "carleson", "classify a measure: Carleson and reverse-Carleson verdicts");
    add_common_options(carleson, carleson_opt, true);
    carleson->add_option("--r", carleson_r, "window radius (0 = module default)")
        ->capture_default_str();

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "invertibility profile: extreme eigenvalues of nested compressions");
    add_common_options(spectrum, spectrum_opt, true);
    spectrum->add_option("--degrees", spectrum_degrees, "strictly increasing degree list")
        ->required()
        ->delimiter(',');

    Common lattice_opt;
    double lattice_r = 0.0;
    int lattice_window = 12, lattice_rings = 3;
    CLI::App* lattice = app.add_subcommand(
        "lattice", "generate and certify a lattice (CSV: plot-ready points; "
                   "JSON: certificates + points)");
    lattice->add_option("--space", lattice_opt.space, "bergman or fock")
        ->check(CLI::IsMember({"bergman", "fock"}))
        ->capture_default_str();
    lattice->add_option("--r", lattice_r,
                        "Fock spacing r, or Bergman ring parameter R")
        ->required();
    lattice->add_option("--window", lattice_window, "Fock window (points in [-rw, rw]^2)")
        ->capture_default_str();
    lattice->add_option("--rings", lattice_rings, "Bergman ring count")
        ->capture_default_str();
    add_output_options(lattice, lattice_opt);

    Common ce_bergman_opt, ce_fock_opt;
    double ce_bergman_r = 7.0, ce_fock_r = 3.5;
    int ce_rings = 3, ce_window = 12;
    std::vector<int> ce_bergman_degrees = {10, 20, 40};
    std::vector<int> ce_fock_degrees = {10, 20, 40, 60};
    CLI::App* ce = app.add_subcommand(
        "counterexample", "flagship experiments: reverse condition without invertibility");
    ce->require_subcommand(1);
    CLI::App* ce_bergman = ce->add_subcommand(
        "bergman", "interpolating ring lattice on the disk");
    ce_bergman->add_option("--r", ce_bergman_r, "ring parameter R")->capture_default_str();
    ce_bergman->add_option("--rings", ce_rings, "ring count")->capture_default_str();
    ce_bergman->add_option("--degrees", ce_bergman_degrees, "profile degrees")
        ->delimiter(',')
        ->capture_default_str();
    ce_bergman->add_option("--tol", ce_bergman_opt.tol, "quadrature doubling tolerance")
        ->capture_default_str();
    add_output_options(ce_bergman, ce_bergman_opt);
    CLI::App* ce_fock = ce->add_subcommand(
        "fock", "supercritical square lattice on the plane");
    ce_fock->add_option("--r", ce_fock_r, "lattice spacing r")->capture_default_str();
    ce_fock->add_option("--window", ce_window, "window (points in [-rw, rw]^2)")
        ->capture_default_str();
    ce_fock->add_option("--degrees", ce_fock_degrees, "profile degrees")
        ->delimiter(',')
        ->capture_default_str();
    ce_fock->add_option("--tol", ce_fock_opt.tol, "quadrature doubling tolerance")
        ->capture_default_str();
    add_output_options(ce_fock, ce_fock_opt);

    std::uint64_t verify_seed = 42;
    std::string verify_output = "-";
    CLI::App* verify = app.add_subcommand(
        "verify", "run the acceptance suite and print the pass/fail table");
    verify->add_option("--seed", verify_seed,
                       "Monte Carlo seed (the pinned suite uses 42)")
        ->capture_default_str();
    verify->add_option("--output", verify_output, "output path, or - for stdout")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*berezin) {
            const tlab::Measure mu = load_measure(berezin_opt);
            const tlab::GridReport rep =
                tlab::berezin_extrema(mu, region_for(mu.space(), berezin_opt),
                                      berezin_opt.grid_density, quad_spec(berezin_opt));
            emit(berezin_opt.format == "json" ? tlab::grid_report_to_json(rep)
                                              : tlab::grid_report_to_csv(rep),
                 berezin_opt.output);
        } else if (*tail) {
            const tlab::Measure mu = load_measure(tail_opt);
            const tlab::GridRegion region = region_for(mu.space(), tail_opt);
            const tlab::GridReport rep =
                mu.space() == tlab::Space::bergman
                    ? tlab::tail_sup_bergman(mu, tail_r, region, tail_opt.grid_density,
                                             quad_spec(tail_opt))
                    : tlab::tail_sup_fock(mu, tail_r, region, tail_opt.grid_density,
                                          quad_spec(tail_opt));
            emit(tail_opt.format == "json" ? tlab::grid_report_to_json(rep)
                                           : tlab::grid_report_to_csv(rep),
                 tail_opt.output);
        } else if (*carleson) {
            const tlab::Measure mu = load_measure(carleson_opt);
            tlab::ClassifyParams params;
            params.region = region_for(mu.space(), carleson_opt);
            params.r = carleson_r;
            params.grid_density = carleson_opt.grid_density;
            params.spec = quad_spec(carleson_opt);
            const tlab::CarlesonReport rep = tlab::classify(mu, params);
            emit(carleson_opt.format == "json" ? tlab::carleson_report_to_json(rep)
                                               : tlab::carleson_report_to_csv(rep),
                 carleson_opt.output);
        } else if (*spectrum) {
            const tlab::Measure mu = load_measure(spectrum_opt);
            const tlab::SpectralProfile rep = tlab::invertibility_profile(
                mu, spectrum_degrees, quad_spec(spectrum_opt));
            emit(spectrum_opt.format == "json" ? tlab::profile_to_json(rep)
                                               : tlab::profile_to_csv(rep),
                 spectrum_opt.output);
        } else if (*lattice) {
            const tlab::Space space = parse_space(lattice_opt.space);
            const tlab::PointSequence seq =
                space == tlab::Space::bergman
                    ? tlab::hyperbolic_lattice(lattice_r, lattice_rings)
                    : tlab::square_lattice(lattice_r, lattice_window);
            emit(lattice_opt.format == "json" ? lattice_json(seq) : lattice_csv(seq),
                 lattice_opt.output);
        } else if (*ce) {
            const bool on_disk = static_cast<bool>(*ce_bergman);
            const Common& opt = on_disk ? ce_bergman_opt : ce_fock_opt;
            const tlab::CounterexampleReport rep =
                on_disk ? tlab::counterexample_bergman_report(
                              ce_bergman_r, ce_rings, ce_bergman_degrees, quad_spec(opt))
                        : tlab::counterexample_fock_report(ce_fock_r, ce_window,
                                                           ce_fock_degrees, quad_spec(opt));
            emit(opt.format == "json" ? tlab::counterexample_to_json(rep)
                                      : tlab::counterexample_to_csv(rep),
                 opt.output);
        } else if (*verify) {
            if (verify_output == "-") return tlab::print_acceptance(std::cout, verify_seed);
            std::ofstream out(verify_output, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open output file: " + verify_output);
            return tlab::print_acceptance(out, verify_seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "toeplitz-lab: error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
