#include "tlab/measure.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tlab/format.hpp"

#include <json.hpp>

namespace tlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double kahan_sum(const std::vector<double>& xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

// Nonnegativity of a density is checked on a polar validation grid covering
// the space's working range (the open disk for Bergman, B(0, 20) for Fock).
void validate_density(Space space, const Density& g) {
    if (!g.eval) fail("Measure: density has no evaluator");
    const double r_max = space == Space::bergman ? 0.999 : 20.0;
    const int radii = 32, angles = 64;
    for (int i = 0; i <= radii; ++i) {
        const double r = r_max * i / radii;
        for (int k = 0; k < angles; ++k) {
            const double th = 2.0 * kPi * (k + 0.5) / angles;
            const Complex z(r * std::cos(th), r * std::sin(th));
            const double v = g.eval(z);
            if (!std::isfinite(v) || v < 0.0) {
                std::ostringstream msg;
                msg << "Measure: density '" << g.name << "' is negative or non-finite at ("
                    << z.real() << ", " << z.imag() << "): " << v;
                fail(msg.str());
            }
        }
    }
}

void validate_selfmap(const PolySelfMap& phi) {
    if (phi.coeffs.empty()) fail("Measure: pull-back self-map has no coefficients");
    bool nonconstant = false;
    for (std::size_t k = 1; k < phi.coeffs.size(); ++k) {
        if (std::abs(phi.coeffs[k]) > 0.0) nonconstant = true;
    }
    if (!nonconstant) fail("Measure: pull-back self-map must be non-constant");
    // Analytic, so the sup over |z| <= r is attained on the circle |z| = r.
    const double r = 0.999;
    const int angles = 4096;
    double sup = 0.0;
    for (int k = 0; k < angles; ++k) {
        const double th = 2.0 * kPi * (k + 0.5) / angles;
        sup = std::max(sup, std::abs(phi.eval(Complex(r * std::cos(th), r * std::sin(th)))));
    }
    if (!(sup < 1.0)) {
        std::ostringstream msg;
        msg << "Measure: self-map is not a strict self-map of the disk "
            << "(sup |phi| = " << sup << " on the validation grid)";
        fail(msg.str());
    }
}

}  // namespace

const char* to_string(Space s) { return s == Space::bergman ? "bergman" : "fock"; }

Space space_from_string(const std::string& s) {
    if (s == "bergman") return Space::bergman;
    if (s == "fock") return Space::fock;
    fail("unknown space '" + s + "' (expected \"bergman\" or \"fock\")");
}

const char* to_string(Measure::Kind k) {
    switch (k) {
        case Measure::Kind::absolutely_continuous: return "ac";
        case Measure::Kind::atomic: return "atomic";
        case Measure::Kind::pull_back: return "pullback";
    }
    return "?";
}

Density density_one() {
    return {"one", {}, [](Complex) { return 1.0; }, true};
}

Density density_one_minus_abs2() {
    return {"one_minus_abs2", {}, [](Complex z) { return 1.0 - std::norm(z); }, true};
}

Density density_power_one_minus_abs2(double exponent) {
    return {"power_one_minus_abs2",
            {{"exponent", exponent}},
            [exponent](Complex z) { return std::pow(1.0 - std::norm(z), exponent); },
            true};
}

Density density_gaussian(double rate) {
    if (!(rate > 0.0)) fail("density_gaussian: rate must be positive");
    return {"gaussian", {{"rate", rate}}, [rate](Complex z) { return std::exp(-rate * std::norm(z)); },
            true};
}

Density density_annulus(double r_min, double r_max) {
    if (!(0.0 <= r_min && r_min < r_max)) fail("density_annulus: need 0 <= r_min < r_max");
    return {"annulus",
            {{"r_min", r_min}, {"r_max", r_max}},
            [r_min, r_max](Complex z) {
                const double a = std::abs(z);
                return (a >= r_min && a < r_max) ? 1.0 : 0.0;
            },
            true};
}

Density density_custom(std::function<double(Complex)> f, bool radial) {
    return {"custom", {}, std::move(f), radial};
}

Density builtin_density(const std::string& name, const std::map<std::string, double>& params) {
    auto want = [&](std::initializer_list<const char*> keys) {
        if (params.size() != keys.size()) {
            fail("density '" + name + "': wrong parameter count");
        }
        for (const char* k : keys) {
            if (!params.count(k)) fail("density '" + name + "': missing parameter '" + k + "'");
        }
    };
    if (name == "one") {
        want({});
        return density_one();
    }
    if (name == "one_minus_abs2") {
        want({});
        return density_one_minus_abs2();
    }
    if (name == "power_one_minus_abs2") {
        want({"exponent"});
        return density_power_one_minus_abs2(params.at("exponent"));
    }
    if (name == "gaussian") {
        want({"rate"});
        return density_gaussian(params.at("rate"));
    }
    if (name == "annulus") {
        want({"r_min", "r_max"});
        return density_annulus(params.at("r_min"), params.at("r_max"));
    }
    fail("unknown density '" + name + "'");
}

Complex PolySelfMap::eval(Complex z) const {
    Complex acc(0.0, 0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
}

int PolySelfMap::degree() const {
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        if (std::abs(coeffs[k]) > 0.0) return static_cast<int>(k);
    }
    return 0;
}

Measure Measure::absolutely_continuous(Space space, Density density) {
    validate_density(space, density);
    Measure m;
    m.space_ = space;
    m.kind_ = Kind::absolutely_continuous;
    m.density_ = std::move(density);
    return m;
}

Measure Measure::atomic(Space space, std::vector<Atom> atoms, TruncationInfo info) {
    if (atoms.empty()) fail("Measure: atomic measure needs at least one atom");
    for (const Atom& a : atoms) {
        if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
            fail("Measure: atom weights must be positive and finite (got " + g17(a.weight) + ")");
        }
        if (!std::isfinite(a.point.real()) || !std::isfinite(a.point.imag())) {
            fail("Measure: atom locations must be finite");
        }
        if (space == Space::bergman) require_in_unit_disk(a.point, "Measure::atomic");
    }
    Measure m;
    m.space_ = space;
    m.kind_ = Kind::atomic;
    m.atoms_ = std::move(atoms);
    m.truncation_ = info;
    return m;
}

Measure Measure::pull_back(PolySelfMap selfmap) {
    validate_selfmap(selfmap);
    Measure m;
    m.space_ = Space::bergman;
    m.kind_ = Kind::pull_back;
    m.selfmap_ = std::move(selfmap);
    return m;
}

const Density& Measure::density() const {
    if (kind_ != Kind::absolutely_continuous) {
        throw std::logic_error("Measure: not an absolutely continuous measure");
    }
    return density_;
}

const std::vector<Atom>& Measure::atoms() const {
    if (kind_ != Kind::atomic) throw std::logic_error("Measure: not an atomic measure");
    return atoms_;
}

const PolySelfMap& Measure::selfmap() const {
    if (kind_ != Kind::pull_back) throw std::logic_error("Measure: not a pull-back measure");
    return selfmap_;
}

double Measure::total_weight() const {
    const auto& as = atoms();
    std::vector<double> ws;
    ws.reserve(as.size());
    for (const Atom& a : as) ws.push_back(a.weight);
    return kahan_sum(ws);
}

Measure Measure::scaled(double factor) const {
    if (!(factor > 0.0)) fail("Measure::scaled: factor must be positive");
    std::vector<Atom> as = atoms();
    for (Atom& a : as) a.weight *= factor;
    return atomic(space_, std::move(as), truncation_);
}

Integral integrate(const Measure& mu, const Integrand& f, const QuadratureSpec& spec,
                   double fock_decay) {
    switch (mu.kind()) {
        case Measure::Kind::atomic: {
            double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
            for (const Atom& a : mu.atoms()) {
                const Complex v = f(a.point);
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                    std::ostringstream msg;
                    msg << "integrate: integrand non-finite at atom (" << a.point.real() << ", "
                        << a.point.imag() << ")";
                    throw std::runtime_error(msg.str());
                }
                double y = a.weight * v.real() - cr, t = sr + y;
                cr = (t - sr) - y;
                sr = t;
                y = a.weight * v.imag() - ci;
                t = si + y;
                ci = (t - si) - y;
                si = t;
            }
            Integral out;
            out.value = Complex(sr, si);
            return out;
        }
        case Measure::Kind::absolutely_continuous: {
            const Density& g = mu.density();
            auto fg = [&](Complex z) { return f(z) * g.eval(z); };
            if (mu.space() == Space::bergman) return integrate_disk(fg, spec);
            return integrate_plane_gaussian(fg, Complex(0.0, 0.0), fock_decay, spec);
        }
        case Measure::Kind::pull_back: {
            const PolySelfMap& phi = mu.selfmap();
            return integrate_disk([&](Complex w) { return f(phi.eval(w)); }, spec);
        }
    }
    throw std::logic_error("integrate: unreachable");
}

double mass_in(const Measure& mu, const PseudoDisk& region, const QuadratureSpec& spec) {
    if (mu.space() != Space::bergman) {
        fail("mass_in: pseudo-hyperbolic disks are Bergman-space regions; this measure lives on "
             "the plane");
    }
    switch (mu.kind()) {
        case Measure::Kind::atomic: {
            std::vector<double> in;
            for (const Atom& a : mu.atoms()) {
                if (region.contains(a.point)) in.push_back(a.weight);
            }
            return kahan_sum(in);
        }
        case Measure::Kind::absolutely_continuous: {
            const Density& g = mu.density();
            return integrate_euclidean_disk([&](Complex z) { return Complex(g.eval(z), 0.0); },
                                            region.euclidean(), spec)
                .real();
        }
        case Measure::Kind::pull_back: {
            const PolySelfMap& phi = mu.selfmap();
            return integrate_disk(
                       [&](Complex w) {
                           return Complex(region.contains(phi.eval(w)) ? 1.0 : 0.0, 0.0);
                       },
                       spec)
                .real();
        }
    }
    throw std::logic_error("mass_in: unreachable");
}

double mass_in(const Measure& mu, const EuclideanDisk& region, const QuadratureSpec& spec) {
    if (mu.space() != Space::fock) {
        fail("mass_in: Euclidean disks are Fock-space regions; this measure lives on the disk");
    }
    switch (mu.kind()) {
        case Measure::Kind::atomic: {
            std::vector<double> in;
            for (const Atom& a : mu.atoms()) {
                if (region.contains(a.point)) in.push_back(a.weight);
            }
            return kahan_sum(in);
        }
        case Measure::Kind::absolutely_continuous: {
            const Density& g = mu.density();
            return integrate_euclidean_disk([&](Complex z) { return Complex(g.eval(z), 0.0); },
                                            region, spec)
                .real();
        }
        default:
            fail("mass_in: pull-back measures live on the disk");
    }
}

ConditionMReport condition_m_check(const Measure& mu, const std::vector<Complex>& probes,
                                   const QuadratureSpec& spec) {
    if (mu.space() != Space::fock) {
        fail("condition_m_check: condition (M) is a Fock-space admissibility test");
    }
    ConditionMReport report;
    report.pass = true;
    for (Complex z : probes) {
        double value = 0.0;
        if (mu.kind() == Measure::Kind::atomic) {
            // |K_z(p)|^2 e^{-|p|^2/2} = exp(Re(conj(z) p) - |p|^2/2), exponent
            // bounded by |z|^2/2, so the sum cannot overflow.
            double s = 0.0, c = 0.0;
            for (const Atom& a : mu.atoms()) {
                const double e =
                    std::exp(std::real(std::conj(z) * a.point) - 0.5 * std::norm(a.point));
                const double y = a.weight * e - c;
                const double t = s + y;
                c = (t - s) - y;
                s = t;
            }
            value = s;
        } else {
            // The integrand e^{Re(conj(z) w) - |w|^2/2} g(w) equals
            // e^{|z|^2/2} e^{-|w-z|^2/2} g(w): a Gaussian of rate 1/2 centered
            // at the probe, so the plane rule is centered there too.
            const Density& g = mu.density();
            const Integral i = integrate_plane_gaussian(
                [&](Complex w) {
                    return Complex(
                        std::exp(std::real(std::conj(z) * w) - 0.5 * std::norm(w)) * g.eval(w),
                        0.0);
                },
                z, 0.5, spec);
            value = i.real();
        }
        report.probes.push_back({z, value, std::isfinite(value)});
        report.pass = report.pass && std::isfinite(value);
    }
    return report;
}

// ---------------------------------------------------------------------------
// JSON schema.

namespace {

using nlohmann::json;

Complex parse_coeff(const json& j, const char* what) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return Complex(j[0].get<double>(), j[1].get<double>());
    }
    fail(std::string(what) + ": expected a number or [re, im]");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) {
            if (it.key() == k) ok = true;
        }
        if (!ok) fail(std::string(where) + ": unknown field '" + it.key() + "'");
    }
}

TruncationInfo parse_truncation(const json& j) {
    TruncationInfo info;
    reject_unknown(j, {"kind", "window_halfside", "lattice_spacing", "outer_ring_beta",
                       "covering_beta", "covering_region_beta"},
                   "measure.truncation");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "fock_window") {
        info.kind = TruncationInfo::Kind::fock_window;
        info.window_halfside = j.at("window_halfside").get<double>();
        if (j.contains("lattice_spacing"))
            info.lattice_spacing = j.at("lattice_spacing").get<double>();
    } else if (kind == "bergman_rings") {
        info.kind = TruncationInfo::Kind::bergman_rings;
        info.outer_ring_beta = j.at("outer_ring_beta").get<double>();
        info.covering_beta = j.at("covering_beta").get<double>();
        info.covering_region_beta = j.at("covering_region_beta").get<double>();
    } else {
        fail("measure.truncation: unknown kind '" + kind + "'");
    }
    return info;
}

}  // namespace

Measure measure_from_json(const std::string& text, std::optional<Space> default_space) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("measure JSON: ") + e.what());
    }
    if (!j.is_object()) fail("measure JSON: expected an object");
    reject_unknown(j, {"space", "kind", "density", "atoms", "taylor", "truncation"}, "measure");

    Space space;
    if (j.contains("space")) {
        space = space_from_string(j.at("space").get<std::string>());
    } else if (default_space) {
        space = *default_space;
    } else {
        fail("measure JSON: missing \"space\" and no default supplied");
    }

    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ac") {
        if (!j.contains("density")) fail("measure JSON: kind \"ac\" needs \"density\"");
        if (j.contains("atoms") || j.contains("taylor") || j.contains("truncation")) {
            fail("measure JSON: kind \"ac\" admits only \"density\"");
        }
        const json& d = j.at("density");
        if (d.is_string()) return Measure::absolutely_continuous(space, builtin_density(d, {}));
        if (!d.is_object()) fail("measure JSON: \"density\" must be a name or an object");
        std::string name;
        std::map<std::string, double> params;
        for (auto it = d.begin(); it != d.end(); ++it) {
            if (it.key() == "name") {
                name = it.value().get<std::string>();
            } else if (it.value().is_number()) {
                params[it.key()] = it.value().get<double>();
            } else {
                fail("measure JSON: density parameter '" + it.key() + "' must be a number");
            }
        }
        if (name.empty()) fail("measure JSON: density object needs a \"name\"");
        return Measure::absolutely_continuous(space, builtin_density(name, params));
    }
    if (kind == "atomic") {
        if (!j.contains("atoms")) fail("measure JSON: kind \"atomic\" needs \"atoms\"");
        if (j.contains("density") || j.contains("taylor")) {
            fail("measure JSON: kind \"atomic\" admits only \"atoms\" (+ optional \"truncation\")");
        }
        std::vector<Atom> atoms;
        for (const json& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 3) {
                fail("measure JSON: each atom must be [re, im, weight]");
            }
            atoms.push_back({Complex(a[0].get<double>(), a[1].get<double>()), a[2].get<double>()});
        }
        TruncationInfo info;
        if (j.contains("truncation")) info = parse_truncation(j.at("truncation"));
        return Measure::atomic(space, std::move(atoms), info);
    }
    if (kind == "pullback") {
        if (space != Space::bergman) fail("measure JSON: pull-back measures are Bergman-space");
        if (!j.contains("taylor")) fail("measure JSON: kind \"pullback\" needs \"taylor\"");
        if (j.contains("density") || j.contains("atoms") || j.contains("truncation")) {
            fail("measure JSON: kind \"pullback\" admits only \"taylor\"");
        }
        PolySelfMap phi;
        for (const json& c : j.at("taylor")) phi.coeffs.push_back(parse_coeff(c, "taylor"));
        return Measure::pull_back(std::move(phi));
    }
    fail("measure JSON: unknown kind '" + kind + "'");
}

std::string measure_to_json(const Measure& mu) {
    std::ostringstream out;
    out << "{\"space\":\"" << to_string(mu.space()) << "\",\"kind\":\"" << to_string(mu.kind())
        << "\"";
    switch (mu.kind()) {
        case Measure::Kind::absolutely_continuous: {
            const Density& g = mu.density();
            if (g.name == "custom") {
                throw std::invalid_argument("measure_to_json: custom densities are not serializable");
            }
            if (g.params.empty()) {
                out << ",\"density\":\"" << g.name << "\"";
            } else {
                out << ",\"density\":{\"name\":\"" << g.name << "\"";
                for (const auto& [k, v] : g.params) out << ",\"" << k << "\":" << g17(v);
                out << "}";
            }
            break;
        }
        case Measure::Kind::atomic: {
            out << ",\"atoms\":[";
            bool first = true;
            for (const Atom& a : mu.atoms()) {
                if (!first) out << ",";
                first = false;
                out << "[" << g17(a.point.real()) << "," << g17(a.point.imag()) << ","
                    << g17(a.weight) << "]";
            }
            out << "]";
            const TruncationInfo& t = mu.truncation();
            if (t.kind == TruncationInfo::Kind::fock_window) {
                out << ",\"truncation\":{\"kind\":\"fock_window\",\"window_halfside\":"
                    << g17(t.window_halfside);
                if (t.lattice_spacing > 0.0)
                    out << ",\"lattice_spacing\":" << g17(t.lattice_spacing);
                out << "}";
            } else if (t.kind == TruncationInfo::Kind::bergman_rings) {
                out << ",\"truncation\":{\"kind\":\"bergman_rings\",\"outer_ring_beta\":"
                    << g17(t.outer_ring_beta) << ",\"covering_beta\":" << g17(t.covering_beta)
                    << ",\"covering_region_beta\":" << g17(t.covering_region_beta) << "}";
            }
            break;
        }
        case Measure::Kind::pull_back: {
            out << ",\"taylor\":[";
            bool first = true;
            for (Complex c : mu.selfmap().coeffs) {
                if (!first) out << ",";
                first = false;
                out << "[" << g17(c.real()) << "," << g17(c.imag()) << "]";
            }
            out << "]";
            break;
        }
    }
    out << "}";
    return out.str();
}

}  // namespace tlab
