// Null-velocity manifold data: the scalar entropy datum sigma(rho0) with its
// derivatives, the dual sigma* = rho0 sigma' - sigma, the derivative
// zeta0 = d/drho0 (sigma/sigma'), and the rest pressure induced by the
// representation constraint  sigma* + (eps_t/(a c)) sigma' p0 = 0.
#pragma once

#include <functional>
#include <string>

#include "covhyp/kinematics.hpp"

namespace covhyp {

/// Rest entropy sigma with first and second derivatives on an open interval.
struct EntropyDatum {
  std::function<double(double)> sigma;
  std::function<double(double)> sigma_prime;
  std::function<double(double)> sigma_second;
  double rho0_min;
  double rho0_max;
  std::string name;

  bool contains(double rho0) const { return rho0 > rho0_min && rho0 < rho0_max; }
};

/// sigma*(rho0) = rho0 sigma'(rho0) - sigma(rho0).
double sigma_star(const EntropyDatum& d, double rho0);

/// zeta0(rho0) = d/drho0 (sigma/sigma') = 1 - sigma sigma'' / sigma'^2.
double zeta0(const EntropyDatum& d, double rho0);

/// Rest pressure p0 = -(a c / eps_t) sigma*/sigma'. Requires eps_t^2 == 1;
/// throws UnsupportedRepresentation for the degenerate flag eps_t == 0.
double pressure(const EntropyDatum& d, const RepSpec& rep, double c, double rho0);

/// Bundle of the datum-side quantities at one rest density.
struct ThermoPoint {
  double rho0 = 0.0;
  double sigma = 0.0;
  double sigma_star = 0.0;
  double zeta0 = 0.0;
  double p0 = 0.0;
};

ThermoPoint thermo_point(const EntropyDatum& d, const RepSpec& rep, double c, double rho0);

/// sigma(rho0) = sigma_bar exp(rho0/rho_star); sigma/sigma' = rho_star,
/// zeta0 = 0. Domain: all reals.
EntropyDatum exponential_entropy(double sigma_bar, double rho_star);

/// sigma(rho0) = -sigma_bar rho0 / (rho0 + rho_star); convex and negative on
/// rho0 > 0 with sigma/sigma' = rho0 (rho0 + rho_star)/rho_star and
/// zeta0 = 1 + 2 rho0/rho_star. Domain: rho0 > 0.
EntropyDatum homographic_entropy(double sigma_bar, double rho_star);

}  // namespace covhyp
