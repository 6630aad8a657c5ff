#pragma once

// Finite compressions of the Toeplitz operator T_mu onto polynomial
// subspaces, their spectral diagnostics, and composition-operator algebra.
//
// Bases.  Bergman e_n(z) = sqrt(n+1) z^n; Fock e_n(z) = z^n / sqrt(2^n n!).
// The degree-N compression is the N x N Hermitian block
//
//     M(m, n) = <T_mu e_n, e_m> = I e_n conj(e_m) dmu            (Bergman)
//             = (1/2) I e_n conj(e_m) e^{-|w|^2/2} dmu           (Fock),
//
// i.e. the restriction of the quadratic form to polynomials of degree < N.
// Atomic measures assemble exactly as compensated sums of rank-one terms
// w_k v(p_k) v(p_k)^*; the Fock assembly works throughout with the weighted
// basis u_n(p) = e_n(p) e^{-|p|^2/4}, which satisfies |u_n| <= 1 and folds
// the Gaussian into the rank-one factors, so no intermediate can overflow.
//
// Truncation rules for lattice-window measures (bounds recorded):
//   Fock: keep atoms with |p| <= sqrt(2N) + 6; a neglected atom contributes
//   at most (w/2) max_{n<N} |u_n(p)|^2 <= (w/2) e^{(N-1) log l - lgamma(N) - l}
//   with l = |p|^2/2 (the Poisson peak bound, valid since l > N there).
//   Bergman rings: keep weight classes while class_mass (N+1) >= 1e-12 times
//   the included mass (a lower bound for the trace); a neglected atom's entry
//   contribution is at most w (N+1) since |e_n|^2 <= n+1.
//
// lambda_min(N) of nested compressions is nonincreasing (Cauchy interlacing)
// and decreases to the infimum of <T_mu f, f>/||f||^2 over polynomials, which
// by density is the bottom of the spectrum: a decay to zero is the finite
// signature of non-invertibility, a floor certifies coercivity.

#include <string>
#include <vector>

#include "tlab/measure.hpp"

namespace tlab {

// e_n(z).  Bergman requires |z| < 1.  Fock values are computed in log space;
// only a genuine overflow of the value itself throws (std::overflow_error).
Complex basis_eval(Space space, int n, Complex z);

struct HermitianMatrix {
    Space space = Space::bergman;
    int degree = 0;                // matrix is degree x degree, monomials 0..degree-1
    std::vector<Complex> entries;  // row-major; exactly Hermitian by construction
    std::string provenance;
    double truncation_bound = 0.0;  // entrywise bound on neglected contributions

    Complex at(int m, int n) const {
        return entries[static_cast<std::size_t>(m) * degree + n];
    }
};

HermitianMatrix toeplitz_matrix(const Measure& mu, int degree,
                                const QuadratureSpec& spec = {});

struct SpectralBounds {
    double lambda_min = 0.0, lambda_max = 0.0;
};

// Extreme eigenvalues by a dense self-adjoint solve; rejects non-Hermitian
// input (std::invalid_argument).
SpectralBounds spectral_bounds(const HermitianMatrix& mat);

struct SpectralProfile {
    std::vector<int> degrees;
    std::vector<double> lambda_min, lambda_max;
    double truncation_bound = 0.0;  // from the top-degree assembly
    std::string note;               // fixed interpretation note
};

// Eigenvalue extremes of nested principal blocks of the top-degree matrix
// (one assembly, so interlacing holds by construction).  degrees must be
// strictly increasing and >= 1.
SpectralProfile invertibility_profile(const Measure& mu, const std::vector<int>& degrees,
                                      const QuadratureSpec& spec = {});

struct ComplexMatrix {
    int rows = 0, cols = 0;
    std::vector<Complex> entries;  // row-major

    Complex at(int m, int n) const {
        return entries[static_cast<std::size_t>(m) * cols + n];
    }
};

// Composition operator block <e_n o phi, e_m> for m, n < degree (Bergman).
// Exact Taylor-coefficient algebra: entry (m, n) = sqrt(n+1) c_m(phi^n) / sqrt(m+1).
// phi must certify as a strict self-map (same validation as pull-back measures).
ComplexMatrix composition_matrix(const PolySelfMap& phi, int degree);

// max-norm of C* C - M(T_{mu_phi}) over the degree x degree block, with C
// expanded to full polynomial degree (or to an internal row cap, in which
// case the Parseval tail bound must certify the neglected rows; otherwise
// std::runtime_error with a diagnostic).
double pullback_identity_residual(const PolySelfMap& phi, int degree,
                                  const QuadratureSpec& spec = {});

// max over probes of | <M a, a> / ||a||^2 - mu~(z) | where a is the
// coefficient vector of the degree-truncated reproducing kernel at z.
double berezin_vs_form_check(const Measure& mu, const std::vector<Complex>& probes,
                             int degree, const QuadratureSpec& spec = {});

}  // namespace tlab
