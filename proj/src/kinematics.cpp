#include "covhyp/kinematics.hpp"

#include <cmath>
#include <string>

namespace covhyp {

namespace {

void check_flag(int eps, const char* what) {
  if (eps != -1 && eps != 0 && eps != 1) {
    throw InvalidParameter(std::string(what) + " flag must be -1, 0 or +1, got " +
                           std::to_string(eps));
  }
}

void check_scale(double s, const char* what) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw InvalidParameter(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

TrigPair trig(int eps, double theta) {
  switch (eps) {
    case -1:
      return {std::cos(theta), std::sin(theta)};
    case 0:
      return {1.0, theta};
    case 1:
      return {std::cosh(theta), std::sinh(theta)};
    default:
      check_flag(eps, "trig");
      return {};
  }
}

GroupSpec::GroupSpec(int epsilon_, double c_) : epsilon(epsilon_), c(c_) {
  check_flag(epsilon, "group");
  check_scale(c, "group celerity c");
}

RepSpec::RepSpec(int epsilon_tilde_, double a_) : epsilon_tilde(epsilon_tilde_), a(a_) {
  check_flag(epsilon_tilde, "representation");
  check_scale(a, "representation scale a");
}

Mat2 group_matrix(const GroupSpec& g, double theta) {
  const TrigPair t = trig(g.epsilon, theta);
  return {t.C, g.c * t.S, (g.epsilon / g.c) * t.S, t.C};
}

Mat2 rep_matrix(const RepSpec& r, double theta) {
  const TrigPair t = trig(r.epsilon_tilde, theta);
  return {t.C, (r.epsilon_tilde / r.a) * t.S, r.a * t.S, t.C};
}

Mat2 compose(const GroupSpec& g, double theta1, double theta2) {
  return group_matrix(g, theta1) * group_matrix(g, theta2);
}

Mat2 compose(const RepSpec& r, double theta1, double theta2) {
  return rep_matrix(r, theta1) * rep_matrix(r, theta2);
}

Mat2 derivative_at_zero(const GroupSpec& g) {
  return {0.0, g.c, g.epsilon / g.c, 0.0};
}

Mat2 derivative_at_zero(const RepSpec& r) {
  return {0.0, r.epsilon_tilde / r.a, r.a, 0.0};
}

double velocity_of_theta(const GroupSpec& g, double theta) {
  const TrigPair t = trig(g.epsilon, theta);
  if (std::fabs(t.C) < 1e-13) {
    throw DegenerateFrame("C(theta) vanishes at theta = " + std::to_string(theta));
  }
  return g.c * t.S / t.C;
}

double theta_of_velocity(const GroupSpec& g, double u) {
  const double x = u / g.c;
  switch (g.epsilon) {
    case 0:
      return x;
    case -1:
      return std::atan(x);
    case 1:
      if (!(std::fabs(x) < 1.0)) {
        throw OutOfRange("|u| >= c has no Lorentz group parameter");
      }
      return std::atanh(x);
    default:
      return 0.0;  // unreachable: GroupSpec validates the flag
  }
}

}  // namespace covhyp
