#pragma once

// Positive measures on the unit disk (Bergman space A^2) and on the plane
// (Fock space F^2), in the three shapes the laboratory works with:
//
//   * absolutely continuous   d mu = g dA       (g >= 0, dA = Lebesgue/pi)
//   * atomic                  mu  = sum w_k delta_{p_k}   (w_k > 0)
//   * pull-back (disk only)   mu_phi(E) = A(phi^{-1}(E)) for an analytic
//                             self-map phi of D given by Taylor coefficients,
//                             so that I f d mu_phi = I f(phi(w)) dA(w).
//
// The Fock-space admissibility test is condition (M):
//
//     I |K_z(w)|^2 e^{-|w|^2/2} d|mu|(w) < infinity   for every z,
//
// with K_z(w) = exp(conj(z) w / 2); for the measures here the integral is
// evaluated (atoms exactly, densities by quadrature) and checked finite.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tlab/geometry.hpp"
#include "tlab/quadrature.hpp"

namespace tlab {

enum class Space { bergman, fock };

const char* to_string(Space s);
Space space_from_string(const std::string& s);

struct Atom {
    Complex point;
    double weight = 0.0;
};

// Named density with parameters so measures serialize deterministically.
struct Density {
    std::string name = "custom";
    std::map<std::string, double> params;
    std::function<double(Complex)> eval;
    bool radial = false;
};

Density density_one();
Density density_one_minus_abs2();
Density density_power_one_minus_abs2(double exponent);
Density density_gaussian(double rate);     // exp(-rate |z|^2)
Density density_annulus(double r_min, double r_max);
Density density_custom(std::function<double(Complex)> f, bool radial = false);
// Builtin lookup by name; throws std::invalid_argument for unknown names or
// missing/extra parameters.
Density builtin_density(const std::string& name, const std::map<std::string, double>& params);

// Analytic self-map of D as a polynomial (finite Taylor expansion).
struct PolySelfMap {
    std::vector<Complex> coeffs;  // c0 + c1 z + c2 z^2 + ...

    Complex eval(Complex z) const;
    int degree() const;
};

// Provenance of a truncated atomic measure; lets Berezin/tail grid reports
// refuse regions whose neighborhoods poke outside the truncation window.
struct TruncationInfo {
    enum class Kind { none, fock_window, bergman_rings };
    Kind kind = Kind::none;
    double window_halfside = 0.0;      // fock_window: atoms fill [-h, h]^2
    double lattice_spacing = 0.0;      // fock_window: generating spacing (0 if unknown)
    double outer_ring_beta = 0.0;      // bergman_rings: outermost ring radius
    double covering_beta = 0.0;        // bergman_rings: certified covering radius
    double covering_region_beta = 0.0; // bergman_rings: region of that certificate
};

class Measure {
  public:
    enum class Kind { absolutely_continuous, atomic, pull_back };

    static Measure absolutely_continuous(Space space, Density density);
    static Measure atomic(Space space, std::vector<Atom> atoms, TruncationInfo info = {});
    static Measure pull_back(PolySelfMap selfmap);  // Bergman space by definition

    Space space() const { return space_; }
    Kind kind() const { return kind_; }
    const Density& density() const;
    const std::vector<Atom>& atoms() const;
    const PolySelfMap& selfmap() const;
    const TruncationInfo& truncation() const { return truncation_; }

    double total_weight() const;         // atomic only: sum of weights
    Measure scaled(double factor) const; // atomic only: weights scaled

  private:
    Measure() = default;
    Space space_ = Space::bergman;
    Kind kind_ = Kind::atomic;
    Density density_;
    std::vector<Atom> atoms_;
    PolySelfMap selfmap_;
    TruncationInfo truncation_;
};

const char* to_string(Measure::Kind k);

// I f d mu.  Atomic measures sum exactly (compensated); densities go through
// the module quadrature; pull-backs integrate f(phi(w)) over the disk.
// `fock_decay` is the declared Gaussian decay of f * density for Fock
// absolutely continuous measures (the artifact's integrands always carry at
// least exp(-|w|^2/4)).
Integral integrate(const Measure& mu, const Integrand& f, const QuadratureSpec& spec = {},
                   double fock_decay = 0.25);

// mu(E) for a pseudo-hyperbolic disk (Bergman measures only).
double mass_in(const Measure& mu, const PseudoDisk& region, const QuadratureSpec& spec = {});
// mu(B) for a Euclidean disk (Fock measures only).
double mass_in(const Measure& mu, const EuclideanDisk& region, const QuadratureSpec& spec = {});

struct ConditionMReport {
    struct Probe {
        Complex z;
        double value = 0.0;
        bool finite = false;
    };
    std::vector<Probe> probes;
    bool pass = false;
};

// Condition (M) at the given probe points (Fock measures only).
ConditionMReport condition_m_check(const Measure& mu, const std::vector<Complex>& probes,
                                   const QuadratureSpec& spec = {});

// JSON measure schema:
//   {"space": "bergman"|"fock", "kind": "ac",       "density": <name or {"name": ..., params...}>}
//   {"space": ...,              "kind": "atomic",   "atoms": [[re, im, weight], ...]}
//   {"space": "bergman",        "kind": "pullback", "taylor": [c0, c1, ...]}   (c_k number or [re, im])
// plus an optional "truncation" object for lattice-derived atomic measures.
// Unknown fields are rejected.  "space" may be omitted when `default_space`
// supplies it (the CLI passes its --space flag through here).
Measure measure_from_json(const std::string& text, std::optional<Space> default_space = {});
std::string measure_to_json(const Measure& mu);

}  // namespace tlab
