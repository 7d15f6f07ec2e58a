#include "covhyp/manifold.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace covhyp {

namespace {

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidParameter(std::string(what) + " must be positive and finite");
  }
}

void check_domain(const EntropyDatum& d, double rho0) {
  if (!std::isfinite(rho0) || !d.contains(rho0)) {
    std::ostringstream os;
    os << "rho0 = " << rho0 << " outside the domain of datum " << d.name;
    throw DomainError(os.str());
  }
}

}  // namespace

double sigma_star(const EntropyDatum& d, double rho0) {
  check_domain(d, rho0);
  return rho0 * d.sigma_prime(rho0) - d.sigma(rho0);
}

double zeta0(const EntropyDatum& d, double rho0) {
  check_domain(d, rho0);
  const double sp = d.sigma_prime(rho0);
  return 1.0 - d.sigma(rho0) * d.sigma_second(rho0) / (sp * sp);
}

double pressure(const EntropyDatum& d, const RepSpec& rep, double c, double rho0) {
  if (rep.epsilon_tilde == 0) {
    throw UnsupportedRepresentation("pressure needs eps_tilde^2 == 1");
  }
  check_domain(d, rho0);
  // -(a c / eps_t) sigma*/sigma' with 1/eps_t == eps_t for eps_t = +-1.
  const double ss = rho0 * d.sigma_prime(rho0) - d.sigma(rho0);
  return -rep.a * c * rep.epsilon_tilde * ss / d.sigma_prime(rho0);
}

ThermoPoint thermo_point(const EntropyDatum& d, const RepSpec& rep, double c, double rho0) {
  ThermoPoint p;
  p.rho0 = rho0;
  p.sigma = d.sigma(rho0);
  p.sigma_star = sigma_star(d, rho0);
  p.zeta0 = zeta0(d, rho0);
  p.p0 = pressure(d, rep, c, rho0);
  return p;
}

EntropyDatum exponential_entropy(double sigma_bar, double rho_star) {
  check_positive(sigma_bar, "sigma_bar");
  check_positive(rho_star, "rho_star");
  EntropyDatum d;
  d.sigma = [=](double r) { return sigma_bar * std::exp(r / rho_star); };
  d.sigma_prime = [=](double r) { return sigma_bar / rho_star * std::exp(r / rho_star); };
  d.sigma_second = [=](double r) {
    return sigma_bar / (rho_star * rho_star) * std::exp(r / rho_star);
  };
  d.rho0_min = -std::numeric_limits<double>::infinity();
  d.rho0_max = std::numeric_limits<double>::infinity();
  std::ostringstream os;
  os << "exponential(sigma_bar=" << sigma_bar << ", rho_star=" << rho_star << ")";
  d.name = os.str();
  return d;
}

EntropyDatum homographic_entropy(double sigma_bar, double rho_star) {
  check_positive(sigma_bar, "sigma_bar");
  check_positive(rho_star, "rho_star");
  EntropyDatum d;
  d.sigma = [=](double r) { return -sigma_bar * r / (r + rho_star); };
  d.sigma_prime = [=](double r) {
    const double q = r + rho_star;
    return -sigma_bar * rho_star / (q * q);
  };
  d.sigma_second = [=](double r) {
    const double q = r + rho_star;
    return 2.0 * sigma_bar * rho_star / (q * q * q);
  };
  d.rho0_min = 0.0;
  d.rho0_max = std::numeric_limits<double>::infinity();
  std::ostringstream os;
  os << "homographic(sigma_bar=" << sigma_bar << ", rho_star=" << rho_star << ")";
  d.name = os.str();
  return d;
}

}  // namespace covhyp
