#pragma once

// Serialization for every report the laboratory emits, plus the bundled
// counterexample experiment reports.
//
// JSON is emitted by hand with a fixed field order and 17-significant-digit
// floats (format.hpp), so identical structures produce byte-identical
// strings; parsing accepts exactly the emitted schema and rejects unknown
// keys, and every report round-trips to an equal in-memory structure.
//
// CSV schemas (first line is the header):
//   GridReport          z_re,z_im,value            one row per grid sample
//   SpectralProfile     degree,lambda_min,lambda_max
//   CarlesonReport      key,value                  flat verdict summary
//   HermitianMatrix     m,n,re,im                  row-major entries
//   CounterexampleReport degree,lambda_min,lambda_max,
//                        control_lambda_min,control_lambda_max

#include <string>
#include <vector>

#include "tlab/berezin.hpp"
#include "tlab/carleson.hpp"
#include "tlab/measure.hpp"
#include "tlab/toeplitz.hpp"

namespace tlab {

std::string grid_report_to_json(const GridReport& report);
GridReport grid_report_from_json(const std::string& text);
std::string grid_report_to_csv(const GridReport& report);

std::string carleson_report_to_json(const CarlesonReport& report);
CarlesonReport carleson_report_from_json(const std::string& text);
std::string carleson_report_to_csv(const CarlesonReport& report);

std::string profile_to_json(const SpectralProfile& profile);
SpectralProfile profile_from_json(const std::string& text);
std::string profile_to_csv(const SpectralProfile& profile);

std::string matrix_to_json(const HermitianMatrix& matrix);
HermitianMatrix matrix_from_json(const std::string& text);
std::string matrix_to_csv(const HermitianMatrix& matrix);

// The bundled flagship experiments: lattice certification, Carleson-condition
// verdicts, the Berezin floor next to its analytic bound, the spectral
// profile, and a control-measure profile at the same degrees.
//
// Bergman (ring lattice, R and ring count): the non-invertibility certificate
// is symbolic — separation R/2 makes the sequence interpolating (threshold
// delta*), interpolating sequences are not sampling, and the measure is then
// not reverse Carleson; the spectral profile is attached without a decay
// assertion.  The control is the sampling-side lattice (R = 0.4, 12 rings).
//
// Fock (square lattice, spacing r >= sqrt(2 pi), half-extent `window`): the
// Berezin transform is bounded below by the analytic floor e^{-r^2/4}/2 while
// lambda_min(N) collapses; the control is the subcritical lattice with
// spacing 1.8 and unit weights at the same degrees.
struct CounterexampleReport {
    Space space = Space::bergman;
    std::string headline;

    // Lattice certification (native metric: beta on the disk, euclidean on
    // the plane).
    double separation = 0.0;
    double covering_upper = 0.0;
    bool interpolation_sufficient = false;  // Bergman side
    bool sampling_sufficient = false;
    bool condition_m = false;  // Fock side

    CarlesonReport carleson;
    double analytic_floor = 0.0;  // sech^4(R/2) or e^{-r^2/4}/2

    SpectralProfile profile;
    SpectralProfile control_profile;
    std::string control_description;
    double profile_ratio = 0.0;  // lambda_min(last) / lambda_min(first)
    double control_ratio = 0.0;
};

CounterexampleReport counterexample_bergman_report(double R, int max_rings,
                                                   const std::vector<int>& degrees,
                                                   const QuadratureSpec& spec = {});
CounterexampleReport counterexample_fock_report(double r, int window,
                                                const std::vector<int>& degrees,
                                                const QuadratureSpec& spec = {});

std::string counterexample_to_json(const CounterexampleReport& report);
CounterexampleReport counterexample_from_json(const std::string& text);
std::string counterexample_to_csv(const CounterexampleReport& report);

}  // namespace tlab
