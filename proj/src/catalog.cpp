#include "covhyp/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "covhyp/errors.hpp"

namespace covhyp {
namespace {

constexpr double kMargin = 1e-9;

std::string describe(const char* text, double rho_star, double a) {
  std::ostringstream os;
  os << text << " (rho_star=" << rho_star << ", a=" << a << ")";
  return os.str();
}

}  // namespace

CovariantSystem circular_elliptic(double rho_star, double sigma_bar, double a, double c) {
  if (!(rho_star > 0.0)) throw InvalidParameter("circular_elliptic: rho_star must be > 0");
  GroupSpec group{-1, c};
  RepSpec rep{-1, a};
  EntropyDatum datum = exponential_entropy(sigma_bar, rho_star);

  ProjectionSpec proj;
  proj.kind = ProjectionKind::closed_form;
  proj.m_const = rho_star;  // sigma/sigma' = rho_star for the exponential datum
  // Beyond |theta| = pi/4 the state map folds back into the strip, so the
  // invertible chart stops just short of it.
  proj.chart_theta_max = 0.5 * std::asin(1.0 - kMargin);

  ValiditySpec validity;
  validity.description =
      describe("|2 J / (a rho_star)| <= 1 - 1e-9", rho_star, a);
  validity.contains = [a, rho_star](const State& w) {
    return std::abs(2.0 * w.J / (a * rho_star)) <= 1.0 - kMargin;
  };

  return CovariantSystem(group, rep, datum, proj, validity, "circular-elliptic");
}

CovariantSystem lorentz_hyperbolic(double rho_star, double sigma_bar, double a, double c) {
  if (!(rho_star > 0.0)) throw InvalidParameter("lorentz_hyperbolic: rho_star must be > 0");
  GroupSpec group{+1, c};
  RepSpec rep{+1, a};
  EntropyDatum datum = homographic_entropy(sigma_bar, rho_star);

  ProjectionSpec proj;
  proj.kind = ProjectionKind::root_solve;
  proj.bracket_lo = 0.0;
  proj.bracket_hi = 0.5 * rho_star;

  double mu = kMargin * std::max(1.0, rho_star);
  ValiditySpec validity;
  validity.description =
      describe("|J|/a + mu <= rho <= rho_star/2 - mu, mu = 1e-9 max(1, rho_star)",
               rho_star, a);
  validity.contains = [a, rho_star, mu](const State& w) {
    return std::abs(w.J) / a + mu <= w.rho && w.rho <= 0.5 * rho_star - mu;
  };

  return CovariantSystem(group, rep, datum, proj, validity, "lorentz-hyperbolic");
}

CovariantSystem galileo(double rho_star, double sigma_bar, double a, int eps_tilde, double c) {
  if (!(rho_star > 0.0)) throw InvalidParameter("galileo: rho_star must be > 0");
  if (eps_tilde != 1 && eps_tilde != -1)
    throw InvalidParameter("galileo: eps_tilde must be +1 or -1");
  GroupSpec group{0, c};
  RepSpec rep{eps_tilde, a};

  // The datum is the one that makes the entropy Hessian positive on rho0 > 0:
  // det(d2 eta) = -eps_t sigma' sigma'' / (a^2 rho0).
  EntropyDatum datum = (eps_tilde == 1) ? homographic_entropy(sigma_bar, rho_star)
                                        : exponential_entropy(sigma_bar, rho_star);
  if (eps_tilde == -1) {
    datum.rho0_min = 0.0;  // narrowed so sigma' / rho0 keeps a fixed sign
    datum.name += " on (0, inf)";
  }

  ProjectionSpec proj;
  proj.kind = ProjectionKind::closed_form;
  if (eps_tilde == -1) proj.chart_theta_max = 0.5 * std::numbers::pi;

  ValiditySpec validity;
  if (eps_tilde == 1) {
    validity.description =
        describe("rho >= 1e-9 and |J| <= a rho (1 - 1e-9)", rho_star, a);
    validity.contains = [a](const State& w) {
      return w.rho >= kMargin && std::abs(w.J) <= a * w.rho * (1.0 - kMargin);
    };
    return CovariantSystem(group, rep, datum, proj, validity, "galileo-hyperbolic");
  }
  validity.description = describe("rho >= 1e-9", rho_star, a);
  validity.contains = [](const State& w) { return w.rho >= kMargin; };
  return CovariantSystem(group, rep, datum, proj, validity, "galileo-elliptic");
}

std::vector<std::string> catalog_names() {
  return {"circular-elliptic", "lorentz-hyperbolic", "galileo-hyperbolic",
          "galileo-elliptic"};
}

SystemDescriptor make_descriptor(SystemId id, const SystemParams& p) {
  switch (id) {
    case SystemId::circular_elliptic:
      return {id, "circular-elliptic", p,
              circular_elliptic(p.rho_star, p.sigma_bar, p.a, p.c)};
    case SystemId::lorentz_hyperbolic:
      return {id, "lorentz-hyperbolic", p,
              lorentz_hyperbolic(p.rho_star, p.sigma_bar, p.a, p.c)};
    case SystemId::galileo_hyperbolic:
      return {id, "galileo-hyperbolic", p,
              galileo(p.rho_star, p.sigma_bar, p.a, +1, p.c)};
    case SystemId::galileo_elliptic:
      return {id, "galileo-elliptic", p,
              galileo(p.rho_star, p.sigma_bar, p.a, -1, p.c)};
  }
  throw InvalidParameter("make_descriptor: unknown system id");
}

SystemDescriptor make_descriptor(const std::string& name, const SystemParams& p) {
  if (name == "circular-elliptic") return make_descriptor(SystemId::circular_elliptic, p);
  if (name == "lorentz-hyperbolic") return make_descriptor(SystemId::lorentz_hyperbolic, p);
  if (name == "galileo-hyperbolic") return make_descriptor(SystemId::galileo_hyperbolic, p);
  if (name == "galileo-elliptic") return make_descriptor(SystemId::galileo_elliptic, p);
  throw InvalidParameter("unknown system '" + name +
                         "'; run 'covhyp catalog list' for the available names");
}

void interior_rho0_bounds(const SystemDescriptor& d, double& lo, double& hi) {
  double rs = d.params.rho_star;
  switch (d.id) {
    case SystemId::lorentz_hyperbolic:
      // Keep rho0 off both bracket ends; rho = rho0 + S^2 m caps at 0.49 rho_star
      // through the theta bound below.
      lo = 0.02 * rs;
      hi = 0.45 * rs;
      return;
    case SystemId::circular_elliptic:
    case SystemId::galileo_hyperbolic:
    case SystemId::galileo_elliptic:
      lo = 0.1 * rs;
      hi = 2.0 * rs;
      return;
  }
  throw InvalidParameter("interior_rho0_bounds: unknown system id");
}

double interior_theta_bound(const SystemDescriptor& d, double rho0) {
  double rs = d.params.rho_star;
  switch (d.id) {
    case SystemId::circular_elliptic:
      // Half of asin(0.98): |2J/(a rho_star)| = |sin 2 theta| stays <= 0.98.
      return 0.5 * std::asin(0.98);
    case SystemId::lorentz_hyperbolic: {
      // rho = rho0 + sinh^2(theta) m <= 0.49 rho_star inside the wedge.
      double m = rho0 * (rho0 + rs) / rs;
      double room = 0.49 * rs - rho0;
      if (room <= 0.0) return 0.0;
      return std::min(1.2, std::asinh(std::sqrt(room / m)));
    }
    case SystemId::galileo_hyperbolic:
    case SystemId::galileo_elliptic:
      return 1.2;
  }
  throw InvalidParameter("interior_theta_bound: unknown system id");
}

FiberPoint sample_interior_fiber(const SystemDescriptor& d, Rng& rng) {
  double lo = 0.0, hi = 0.0;
  interior_rho0_bounds(d, lo, hi);
  FiberPoint fp;
  fp.rho0 = rng.uniform(lo, hi);
  double tb = interior_theta_bound(d, fp.rho0);
  fp.theta = rng.uniform(-tb, tb);
  return fp;
}

}  // namespace covhyp
