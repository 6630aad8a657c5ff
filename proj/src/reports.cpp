#include "tlab/reports.hpp"

#include <json.hpp>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include "tlab/format.hpp"
#include "tlab/lattice.hpp"

namespace tlab {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) fail(std::string(where) + ": unknown field '" + it.key() + "'");
    }
}

json parse(const std::string& text, const char* where) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(std::string(where) + ": malformed JSON");
    if (!j.is_object()) fail(std::string(where) + ": expected a JSON object");
    return j;
}

double num(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_number())
        fail(std::string(where) + ": missing numeric field '" + key + "'");
    return obj[key].get<double>();
}

bool flag(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_boolean())
        fail(std::string(where) + ": missing boolean field '" + key + "'");
    return obj[key].get<bool>();
}

std::string text_field(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_string())
        fail(std::string(where) + ": missing string field '" + key + "'");
    return obj[key].get<std::string>();
}

Complex pair_field(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_array() || obj[key].size() != 2 ||
        !obj[key][0].is_number() || !obj[key][1].is_number())
        fail(std::string(where) + ": field '" + key + "' must be [re, im]");
    return Complex(obj[key][0].get<double>(), obj[key][1].get<double>());
}

Space space_field(const json& obj, const char* where) {
    const std::string s = text_field(obj, "space", where);
    if (s == "bergman") return Space::bergman;
    if (s == "fock") return Space::fock;
    fail(std::string(where) + ": unknown space '" + s + "'");
}

// ---- emission helpers ----------------------------------------------------

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string quoted(const std::string& s) { return '"' + escape(s) + '"'; }

std::string pair_of(Complex z) { return '[' + g17(z.real()) + ',' + g17(z.imag()) + ']'; }

const char* bool_word(bool b) { return b ? "true" : "false"; }

std::string region_json(const GridRegion& region) {
    if (region.fock_rect)
        return std::string("{\"kind\":\"fock_rectangle\",\"lo\":") + pair_of(region.lo) +
               ",\"hi\":" + pair_of(region.hi) + '}';
    return std::string("{\"kind\":\"bergman_disk\",\"rho_max\":") + g17(region.rho_max) + '}';
}

GridRegion region_from(const json& obj, const char* where) {
    if (!obj.is_object()) fail(std::string(where) + ": 'region' must be an object");
    const std::string kind = text_field(obj, "kind", where);
    if (kind == "bergman_disk") {
        reject_unknown(obj, {"kind", "rho_max"}, where);
        return GridRegion::bergman_disk(num(obj, "rho_max", where));
    }
    if (kind == "fock_rectangle") {
        reject_unknown(obj, {"kind", "lo", "hi"}, where);
        return GridRegion::fock_rectangle(pair_field(obj, "lo", where),
                                          pair_field(obj, "hi", where));
    }
    fail(std::string(where) + ": unknown region kind '" + kind + "'");
}

std::string int_list(const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out + ']';
}

std::string num_list(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += g17(v[i]);
    }
    return out + ']';
}

std::vector<double> num_list_from(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_array())
        fail(std::string(where) + ": missing array field '" + key + "'");
    std::vector<double> out;
    for (const auto& e : obj[key]) {
        if (!e.is_number()) fail(std::string(where) + ": '" + key + "' must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

}  // namespace

// ---- GridReport ------------------------------------------------------------

std::string grid_report_to_json(const GridReport& report) {
    std::string out = "{\"region\":" + region_json(report.region);
    out += ",\"radial\":" + std::to_string(report.radial);
    out += ",\"angular\":" + std::to_string(report.angular);
    out += ",\"nx\":" + std::to_string(report.nx);
    out += ",\"ny\":" + std::to_string(report.ny);
    out += ",\"inf_value\":" + g17(report.inf_value);
    out += ",\"sup_value\":" + g17(report.sup_value);
    out += ",\"argmin\":" + pair_of(report.argmin);
    out += ",\"argmax\":" + pair_of(report.argmax);
    out += ",\"samples\":[";
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        if (i) out += ',';
        out += '[' + g17(report.samples[i].z.real()) + ',' + g17(report.samples[i].z.imag()) +
               ',' + g17(report.samples[i].value) + ']';
    }
    out += "]}";
    return out;
}

GridReport grid_report_from_json(const std::string& text) {
    const char* where = "grid_report";
    const json j = parse(text, where);
    reject_unknown(j,
                   {"region", "radial", "angular", "nx", "ny", "inf_value", "sup_value",
                    "argmin", "argmax", "samples"},
                   where);
    GridReport report;
    if (!j.contains("region")) fail("grid_report: missing field 'region'");
    report.region = region_from(j["region"], where);
    report.radial = static_cast<int>(num(j, "radial", where));
    report.angular = static_cast<int>(num(j, "angular", where));
    report.nx = static_cast<int>(num(j, "nx", where));
    report.ny = static_cast<int>(num(j, "ny", where));
    report.inf_value = num(j, "inf_value", where);
    report.sup_value = num(j, "sup_value", where);
    report.argmin = pair_field(j, "argmin", where);
    report.argmax = pair_field(j, "argmax", where);
    if (!j.contains("samples") || !j["samples"].is_array())
        fail("grid_report: missing array field 'samples'");
    for (const auto& row : j["samples"]) {
        if (!row.is_array() || row.size() != 3) fail("grid_report: samples rows are triples");
        report.samples.push_back(
            {Complex(row[0].get<double>(), row[1].get<double>()), row[2].get<double>()});
    }
    return report;
}

std::string grid_report_to_csv(const GridReport& report) {
    std::string out = "z_re,z_im,value\n";
    for (const GridSample& s : report.samples)
        out += g17(s.z.real()) + ',' + g17(s.z.imag()) + ',' + g17(s.value) + '\n';
    return out;
}

// ---- CarlesonReport --------------------------------------------------------

std::string carleson_report_to_json(const CarlesonReport& report) {
    std::string out = "{\"space\":";
    out += quoted(to_string(report.space));
    out += ",\"r_used\":" + g17(report.r_used);
    out += ",\"sup_ratio\":" + g17(report.sup_ratio);
    out += ",\"inf_ratio\":" + g17(report.inf_ratio);
    out += ",\"arg_sup\":" + pair_of(report.arg_sup);
    out += ",\"arg_inf\":" + pair_of(report.arg_inf);
    out += ",\"grid\":" + quoted(report.grid);
    out += ",\"carleson_threshold\":" + g17(report.carleson_threshold);
    out += ",\"reverse_threshold\":" + g17(report.reverse_threshold);
    out += ",\"verdict_carleson\":";
    out += bool_word(report.verdict_carleson);
    out += ",\"verdict_reverse_condition\":";
    out += bool_word(report.verdict_reverse_condition);
    out += ",\"berezin_inf\":" + g17(report.berezin_inf);
    out += ",\"berezin_sup\":" + g17(report.berezin_sup);
    out += ",\"floor_constant\":" + g17(report.floor_constant);
    out += ",\"berezin_floor\":" + g17(report.berezin_floor);
    out += ",\"semantics\":" + quoted(report.semantics);
    out += '}';
    return out;
}

CarlesonReport carleson_report_from_json(const std::string& text) {
    const char* where = "carleson_report";
    const json j = parse(text, where);
    reject_unknown(j,
                   {"space", "r_used", "sup_ratio", "inf_ratio", "arg_sup", "arg_inf", "grid",
                    "carleson_threshold", "reverse_threshold", "verdict_carleson",
                    "verdict_reverse_condition", "berezin_inf", "berezin_sup",
                    "floor_constant", "berezin_floor", "semantics"},
                   where);
    CarlesonReport report;
    report.space = space_field(j, where);
    report.r_used = num(j, "r_used", where);
    report.sup_ratio = num(j, "sup_ratio", where);
    report.inf_ratio = num(j, "inf_ratio", where);
    report.arg_sup = pair_field(j, "arg_sup", where);
    report.arg_inf = pair_field(j, "arg_inf", where);
    report.grid = text_field(j, "grid", where);
    report.carleson_threshold = num(j, "carleson_threshold", where);
    report.reverse_threshold = num(j, "reverse_threshold", where);
    report.verdict_carleson = flag(j, "verdict_carleson", where);
    report.verdict_reverse_condition = flag(j, "verdict_reverse_condition", where);
    report.berezin_inf = num(j, "berezin_inf", where);
    report.berezin_sup = num(j, "berezin_sup", where);
    report.floor_constant = num(j, "floor_constant", where);
    report.berezin_floor = num(j, "berezin_floor", where);
    report.semantics = text_field(j, "semantics", where);
    return report;
}

std::string carleson_report_to_csv(const CarlesonReport& report) {
    std::string out = "key,value\n";
    out += std::string("space,") + to_string(report.space) + '\n';
    out += "r_used," + g17(report.r_used) + '\n';
    out += "sup_ratio," + g17(report.sup_ratio) + '\n';
    out += "inf_ratio," + g17(report.inf_ratio) + '\n';
    out += "carleson_threshold," + g17(report.carleson_threshold) + '\n';
    out += "reverse_threshold," + g17(report.reverse_threshold) + '\n';
    out += std::string("verdict_carleson,") + bool_word(report.verdict_carleson) + '\n';
    out += std::string("verdict_reverse_condition,") +
           bool_word(report.verdict_reverse_condition) + '\n';
    out += "berezin_inf," + g17(report.berezin_inf) + '\n';
    out += "berezin_sup," + g17(report.berezin_sup) + '\n';
    out += "floor_constant," + g17(report.floor_constant) + '\n';
    out += "berezin_floor," + g17(report.berezin_floor) + '\n';
    return out;
}

// ---- SpectralProfile ---------------------------------------------------------

std::string profile_to_json(const SpectralProfile& profile) {
    std::string out = "{\"degrees\":" + int_list(profile.degrees);
    out += ",\"lambda_min\":" + num_list(profile.lambda_min);
    out += ",\"lambda_max\":" + num_list(profile.lambda_max);
    out += ",\"truncation_bound\":" + g17(profile.truncation_bound);
    out += ",\"note\":" + quoted(profile.note);
    out += '}';
    return out;
}

SpectralProfile profile_from_json(const std::string& text) {
    const char* where = "spectral_profile";
    const json j = parse(text, where);
    reject_unknown(j, {"degrees", "lambda_min", "lambda_max", "truncation_bound", "note"},
                   where);
    SpectralProfile profile;
    for (const double d : num_list_from(j, "degrees", where))
        profile.degrees.push_back(static_cast<int>(d));
    profile.lambda_min = num_list_from(j, "lambda_min", where);
    profile.lambda_max = num_list_from(j, "lambda_max", where);
    profile.truncation_bound = num(j, "truncation_bound", where);
    profile.note = text_field(j, "note", where);
    if (profile.lambda_min.size() != profile.degrees.size() ||
        profile.lambda_max.size() != profile.degrees.size())
        fail("spectral_profile: degrees and lambda lists must have equal length");
    return profile;
}

std::string profile_to_csv(const SpectralProfile& profile) {
    std::string out = "degree,lambda_min,lambda_max\n";
    for (std::size_t i = 0; i < profile.degrees.size(); ++i)
        out += std::to_string(profile.degrees[i]) + ',' + g17(profile.lambda_min[i]) + ',' +
               g17(profile.lambda_max[i]) + '\n';
    return out;
}

// ---- HermitianMatrix ---------------------------------------------------------

std::string matrix_to_json(const HermitianMatrix& matrix) {
    std::string out = "{\"space\":";
    out += quoted(to_string(matrix.space));
    out += ",\"degree\":" + std::to_string(matrix.degree);
    out += ",\"provenance\":" + quoted(matrix.provenance);
    out += ",\"truncation_bound\":" + g17(matrix.truncation_bound);
    out += ",\"entries\":[";
    for (std::size_t i = 0; i < matrix.entries.size(); ++i) {
        if (i) out += ',';
        out += pair_of(matrix.entries[i]);
    }
    out += "]}";
    return out;
}

HermitianMatrix matrix_from_json(const std::string& text) {
    const char* where = "hermitian_matrix";
    const json j = parse(text, where);
    reject_unknown(j, {"space", "degree", "provenance", "truncation_bound", "entries"}, where);
    HermitianMatrix matrix;
    matrix.space = space_field(j, where);
    matrix.degree = static_cast<int>(num(j, "degree", where));
    matrix.provenance = text_field(j, "provenance", where);
    matrix.truncation_bound = num(j, "truncation_bound", where);
    if (matrix.degree < 1) fail("hermitian_matrix: degree must be at least 1");
    if (!j.contains("entries") || !j["entries"].is_array())
        fail("hermitian_matrix: missing array field 'entries'");
    for (const auto& e : j["entries"]) {
        if (!e.is_array() || e.size() != 2)
            fail("hermitian_matrix: entries are [re, im] pairs");
        matrix.entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    if (matrix.entries.size() !=
        static_cast<std::size_t>(matrix.degree) * static_cast<std::size_t>(matrix.degree))
        fail("hermitian_matrix: entry count must equal degree^2");
    return matrix;
}

std::string matrix_to_csv(const HermitianMatrix& matrix) {
    std::string out = "m,n,re,im\n";
    for (int m = 0; m < matrix.degree; ++m)
        for (int n = 0; n < matrix.degree; ++n)
            out += std::to_string(m) + ',' + std::to_string(n) + ',' +
                   g17(matrix.at(m, n).real()) + ',' + g17(matrix.at(m, n).imag()) + '\n';
    return out;
}

// ---- counterexample bundles ---------------------------------------------------

namespace {

double ratio_of(const SpectralProfile& profile) {
    return profile.lambda_min.back() / profile.lambda_min.front();
}

}  // namespace

CounterexampleReport counterexample_bergman_report(double R, int max_rings,
                                                   const std::vector<int>& degrees,
                                                   const QuadratureSpec& spec) {
    const PointSequence seq = hyperbolic_lattice(R, max_rings);
    const Measure mu = counterexample_bergman(R, max_rings);

    CounterexampleReport rep;
    rep.space = Space::bergman;
    rep.separation = seq.beta_separation;
    rep.covering_upper = seq.beta_covering_bound;
    rep.interpolation_sufficient = interpolation_sufficient(seq);
    rep.sampling_sufficient = sampling_sufficient(seq);
    rep.condition_m = false;  // Bergman: not applicable

    ClassifyParams params;
    params.region = GridRegion::bergman_disk(0.95);
    params.r = 0.9985;
    params.grid_density = 64;  // fixed sweep density: the published grid
    params.spec = spec;
    rep.carleson = classify(mu, params);
    rep.analytic_floor = std::pow(1.0 / std::cosh(0.5 * R), 4);

    rep.profile = invertibility_profile(mu, degrees, spec);
    rep.control_profile =
        invertibility_profile(counterexample_bergman(0.4, 12), degrees, spec);
    rep.control_description = "sampling-side ring lattice R = 0.4, 12 rings, same weights";
    rep.profile_ratio = ratio_of(rep.profile);
    rep.control_ratio = ratio_of(rep.control_profile);
    rep.headline =
        "ring lattice with separation above the interpolation threshold: Berezin "
        "transform bounded below (analytic floor sech^4(R/2)) and the reverse Carleson "
        "condition holds, yet the measure is not reverse Carleson because an "
        "interpolating sequence cannot sample; the spectral profile is attached "
        "without a decay assertion";
    return rep;
}

CounterexampleReport counterexample_fock_report(double r, int window,
                                                const std::vector<int>& degrees,
                                                const QuadratureSpec& spec) {
    const PointSequence seq = square_lattice(r, window);
    const Measure mu = counterexample_fock(r, window);

    CounterexampleReport rep;
    rep.space = Space::fock;
    rep.separation = seq.separation;
    rep.covering_upper = seq.covering_bound;
    rep.interpolation_sufficient = false;  // Bergman-side certificates only
    rep.sampling_sufficient = false;
    rep.condition_m =
        condition_m_check(mu, {Complex(0.0, 0.0), Complex(0.5 * r, 0.5 * r), Complex(1.0, 0.5)},
                          spec)
            .pass;

    ClassifyParams params;
    params.region = GridRegion::fock_rectangle(Complex(0.0, 0.0), Complex(r, r));
    params.r = r;
    params.spec = spec;
    rep.carleson = classify(mu, params);
    rep.analytic_floor = 0.5 * std::exp(-0.25 * r * r);

    rep.profile = invertibility_profile(mu, degrees, spec);
    {
        const PointSequence control_seq = square_lattice(1.8, 10);
        std::vector<Atom> atoms;
        atoms.reserve(control_seq.points.size());
        for (const Complex p : control_seq.points) atoms.push_back({p, 1.0});
        TruncationInfo info;
        info.kind = TruncationInfo::Kind::fock_window;
        info.window_halfside = control_seq.region.half_side;
        info.lattice_spacing = 1.8;
        rep.control_profile = invertibility_profile(
            Measure::atomic(Space::fock, std::move(atoms), info), degrees, spec);
    }
    rep.control_description = "subcritical square lattice spacing 1.8, window 10, unit weights";
    rep.profile_ratio = ratio_of(rep.profile);
    rep.control_ratio = ratio_of(rep.control_profile);
    rep.headline =
        "supercritical square lattice (spacing above sqrt(2 pi)): Berezin transform "
        "bounded below (analytic floor e^{-r^2/4}/2) and the reverse Carleson condition "
        "holds, yet lambda_min collapses relative to the subcritical control";
    return rep;
}

std::string counterexample_to_json(const CounterexampleReport& report) {
    std::string out = "{\"space\":";
    out += quoted(to_string(report.space));
    out += ",\"headline\":" + quoted(report.headline);
    out += ",\"separation\":" + g17(report.separation);
    out += ",\"covering_upper\":" + g17(report.covering_upper);
    out += ",\"interpolation_sufficient\":";
    out += bool_word(report.interpolation_sufficient);
    out += ",\"sampling_sufficient\":";
    out += bool_word(report.sampling_sufficient);
    out += ",\"condition_m\":";
    out += bool_word(report.condition_m);
    out += ",\"carleson\":" + carleson_report_to_json(report.carleson);
    out += ",\"analytic_floor\":" + g17(report.analytic_floor);
    out += ",\"profile\":" + profile_to_json(report.profile);
    out += ",\"control_profile\":" + profile_to_json(report.control_profile);
    out += ",\"control_description\":" + quoted(report.control_description);
    out += ",\"profile_ratio\":" + g17(report.profile_ratio);
    out += ",\"control_ratio\":" + g17(report.control_ratio);
    out += '}';
    return out;
}

CounterexampleReport counterexample_from_json(const std::string& text) {
    const char* where = "counterexample_report";
    const json j = parse(text, where);
    reject_unknown(j,
                   {"space", "headline", "separation", "covering_upper",
                    "interpolation_sufficient", "sampling_sufficient", "condition_m",
                    "carleson", "analytic_floor", "profile", "control_profile",
                    "control_description", "profile_ratio", "control_ratio"},
                   where);
    CounterexampleReport rep;
    rep.space = space_field(j, where);
    rep.headline = text_field(j, "headline", where);
    rep.separation = num(j, "separation", where);
    rep.covering_upper = num(j, "covering_upper", where);
    rep.interpolation_sufficient = flag(j, "interpolation_sufficient", where);
    rep.sampling_sufficient = flag(j, "sampling_sufficient", where);
    rep.condition_m = flag(j, "condition_m", where);
    if (!j.contains("carleson")) fail("counterexample_report: missing field 'carleson'");
    rep.carleson = carleson_report_from_json(j["carleson"].dump());
    rep.analytic_floor = num(j, "analytic_floor", where);
    if (!j.contains("profile") || !j.contains("control_profile"))
        fail("counterexample_report: missing profile fields");
    rep.profile = profile_from_json(j["profile"].dump());
    rep.control_profile = profile_from_json(j["control_profile"].dump());
    rep.control_description = text_field(j, "control_description", where);
    rep.profile_ratio = num(j, "profile_ratio", where);
    rep.control_ratio = num(j, "control_ratio", where);
    return rep;
}

std::string counterexample_to_csv(const CounterexampleReport& report) {
    if (report.control_profile.degrees != report.profile.degrees)
        fail("counterexample_to_csv: profile and control degrees differ");
    std::string out = "degree,lambda_min,lambda_max,control_lambda_min,control_lambda_max\n";
    for (std::size_t i = 0; i < report.profile.degrees.size(); ++i)
        out += std::to_string(report.profile.degrees[i]) + ',' +
               g17(report.profile.lambda_min[i]) + ',' + g17(report.profile.lambda_max[i]) +
               ',' + g17(report.control_profile.lambda_min[i]) + ',' +
               g17(report.control_profile.lambda_max[i]) + '\n';
    return out;
}

}  // namespace tlab
