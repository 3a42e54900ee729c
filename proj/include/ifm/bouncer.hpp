#ifndef IFM_BOUNCER_HPP
#define IFM_BOUNCER_HPP

#include <stdexcept>
#include <vector>

namespace ifm {

// A particle bouncing on a hard floor under uniform gravity.  Lengths are
// measured in the natural gravitational length z0, energies in m*g*z0,
// so the n-th eigenstate is Ai(z/z0 + zeta_n) with energy -zeta_n.
struct BouncerConfig {
    double z0 = 1.0;      // gravitational length, reporting unit
    double z_max = 12.0;  // grid extent in units of z0
    int n_grid = 4096;    // uniform grid points on [0, z_max]

    std::vector<double> make_grid() const; // z/z0 values
};

struct BounceEigenstate {
    int level = 0;          // 0 = ground state
    double zeta = 0.0;      // Airy zero fixing the energy
    double energy = 0.0;    // -zeta, in units of m*g*z0
    std::vector<double> wavefunction; // real, unit L2 norm on the grid
};

struct GaussianFit {
    double mean = 0.0;   // in units of z0
    double sigma = 0.0;  // in units of z0
    double overlap_probability = 0.0;
};

// Thrown when the grid cannot support the requested state: the trapezoid
// normalization on the grid and on a doubled grid disagree by > 1e-4.
struct GridTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BounceEigenstate bounce_eigenstate(const BouncerConfig& cfg, int level);

// Energy gap E_1 - E_0 = zeta_1 - zeta_2 (in m*g*z0); the motional
// quantum of the two-level bomb model.
double bounce_gap();

// Squared overlap |<chi|minus>|^2 of the normalized Gaussian amplitude
// chi(z) ~ exp(-(z - mean)^2 / (2 sigma^2)) with the antisymmetric
// superposition |minus> = (|0> - |1>)/sqrt(2) of the two lowest levels.
double overlap_with_minus(const BouncerConfig& cfg, double mean, double sigma);

// Best Gaussian approximation of |minus>: coarse scan over
// mean in [1, 5] z0, sigma in [0.5, 3] z0, then Nelder-Mead refinement.
GaussianFit fit_gaussian(const BouncerConfig& cfg);

// Largest height (units of z0) the floor can be raised while the
// probability of |minus> below it stays under epsilon.  epsilon = 1
// returns the full grid extent.
double safe_raise_height(const BouncerConfig& cfg, double epsilon);

} // namespace ifm

#endif // IFM_BOUNCER_HPP
