// Factories for the shipped systems, each a fully wired CovariantSystem:
//
//   circular-elliptic    eps = eps_t = -1, exponential datum, closed-form
//                        projection, validity |2J/(a rho_star)| <= 1 - margin
//   lorentz-hyperbolic   eps = eps_t = +1, homographic datum, bisection
//                        projection, validity |J|/a <= rho <= rho_star/2
//   galileo-hyperbolic   eps = 0, eps_t = +1, homographic datum
//   galileo-elliptic     eps = 0, eps_t = -1, exponential datum
//
// The Galileo data are paired so that both convexity quantities stay positive
// on rho0 > 0 (det d2eta = -eps_t sigma' sigma'' / (a^2 rho0) must be > 0).
#pragma once

#include <string>
#include <vector>

#include "covhyp/construction.hpp"
#include "covhyp/rng.hpp"

namespace covhyp {

enum class SystemId {
  circular_elliptic,
  lorentz_hyperbolic,
  galileo_hyperbolic,
  galileo_elliptic,
};

struct SystemParams {
  double rho_star = 1.0;
  double sigma_bar = 1.0;
  double a = 1.0;
  double c = 1.0;
};

CovariantSystem circular_elliptic(double rho_star, double sigma_bar, double a, double c);
CovariantSystem lorentz_hyperbolic(double rho_star, double sigma_bar, double a, double c);
CovariantSystem galileo(double rho_star, double sigma_bar, double a, int eps_tilde, double c);

/// A catalog entry: the system plus the metadata the CLI and the verification
/// suite need (identifier, parameters, human-readable validity text).
struct SystemDescriptor {
  SystemId id;
  std::string name;
  SystemParams params;
  CovariantSystem system;
};

/// Names accepted by the CLI, in listing order.
std::vector<std::string> catalog_names();

SystemDescriptor make_descriptor(SystemId id, const SystemParams& p);
/// Throws InvalidParameter for an unknown name.
SystemDescriptor make_descriptor(const std::string& name, const SystemParams& p);

/// Uniform draw over a fiber box chosen well inside the validity domain, so
/// finite-difference stencils and moderate transports stay admissible.
FiberPoint sample_interior_fiber(const SystemDescriptor& d, Rng& rng);

/// Largest |theta| the interior sampler may pair with the given rho0 (the
/// Lorentz wedge narrows as rho0 approaches rho_star/2).
double interior_theta_bound(const SystemDescriptor& d, double rho0);

/// rho0 sampling interval used by sample_interior_fiber.
void interior_rho0_bounds(const SystemDescriptor& d, double& lo, double& hi);

}  // namespace covhyp
