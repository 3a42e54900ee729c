#ifndef IFM_PARAMS_HPP
#define IFM_PARAMS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace ifm {

// Model parameters.  hbar = 1 throughout: frequencies double as energies.
//
// A single photon crosses an interferometer whose arm I contains a
// two-level "bomb": a motional system with ground |0>, excited |1>,
// splitting omega_m, and an excitation-triggered explosion channel of
// rate gamma ("Gamma" in reports).  The photon wavepacket is a Gaussian
// centered on omega_ph with intensity standard deviation delta_omega_ph.
struct Params {
    double omega_ph = 10.0;        // carrier frequency, units of gamma
    double delta_omega_ph = 100.0; // wavepacket intensity std
    double omega_m = 2.0;          // motional splitting
    double gamma = 1.0;            // explosion rate
    double tau = 20.0;             // interrogation time
    int n_modes = 4096;            // requested mode count (may be adjusted up)
    double grid_span = 8.0;        // half-extent in units of delta_omega_ph

    double hbar_omega_m() const { return omega_m; }
};

struct GridInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniform frequency grid, symmetric about omega_ph, with the spacing
// snapped so that omega_m is an exact multiple: pairing a mode at omega
// with its partner at omega - omega_m is then an integer index shift.
struct FrequencyGrid {
    std::vector<double> omegas;
    double spacing = 0.0;
    int shift_steps = 0; // omega_m / spacing, exact

    int size() const { return (int)omegas.size(); }
};

// Builds the grid for p.  The spacing starts from the requested n_modes
// over [omega_ph - span, omega_ph + span], span = grid_span *
// delta_omega_ph, and is then reduced to the nearest exact divisor of
// omega_m; n_modes only ever grows.  Throws GridInfeasible when
// omega_m < requested spacing (the shift would fall between grid points
// at any n no smaller than requested).
FrequencyGrid build_grid(const Params& p);

// Hierarchy-of-scales advisories: omega_ph >> omega_m, delta_omega_ph
// >> omega_m and omega_m >> gamma keep the two-level bomb model and the
// energy bookkeeping clean.  Violations degrade accuracy gracefully, so
// they warn rather than fail.
std::vector<std::string> regime_warnings(const Params& p, double factor = 10.0);

} // namespace ifm

#endif // IFM_PARAMS_HPP
