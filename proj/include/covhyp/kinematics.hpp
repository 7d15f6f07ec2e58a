// One-parameter space-time groups and their state-space representations.
//
// A group flag eps in {-1, 0, +1} selects the trigonometry of the family:
//   eps = -1  circular   (C, S) = (cos, sin)
//   eps =  0  Galileo    (C, S) = (1, theta)
//   eps = +1  Lorentz    (C, S) = (cosh, sinh)
// All three satisfy C^2 - eps S^2 = 1, dC/dtheta = eps S, dS/dtheta = C.
//
// The space-time matrix is  G_theta = [[C, c S], [(eps/c) S, C]]  and the
// state-space representation is  Y_theta = [[Ct, (eps_t/a) St], [a St, Ct]]
// with its own flag eps_t and scale a.
#pragma once

#include "covhyp/mat2.hpp"

namespace covhyp {

struct TrigPair {
  double C = 1.0;
  double S = 0.0;
};

/// Evaluate the trig pair of the family selected by `eps` at `theta`.
TrigPair trig(int eps, double theta);

/// Space-time group: flag eps in {-1,0,+1} and celerity scale c > 0.
struct GroupSpec {
  int epsilon;
  double c;
  GroupSpec(int epsilon_, double c_);
};

/// State-space representation: flag eps_tilde in {-1,0,+1} and scale a > 0.
struct RepSpec {
  int epsilon_tilde;
  double a;
  RepSpec(int epsilon_tilde_, double a_);
};

Mat2 group_matrix(const GroupSpec& g, double theta);
Mat2 rep_matrix(const RepSpec& r, double theta);

/// Product of two group (resp. representation) matrices. By the addition
/// laws of the trig pairs it equals the matrix at theta1 + theta2.
Mat2 compose(const GroupSpec& g, double theta1, double theta2);
Mat2 compose(const RepSpec& r, double theta1, double theta2);

/// d(G_theta)/dtheta at theta = 0: [[0, c], [eps/c, 0]].
Mat2 derivative_at_zero(const GroupSpec& g);
/// d(Y_theta)/dtheta at theta = 0: [[0, eps_t/a], [a, 0]].
Mat2 derivative_at_zero(const RepSpec& r);

/// Entropy velocity carried by the group element: u = c S_theta / C_theta.
/// Throws DegenerateFrame when C_theta is within 1e-13 of zero.
double velocity_of_theta(const GroupSpec& g, double theta);

/// Inverse of velocity_of_theta. Throws OutOfRange when no parameter exists
/// (|u| >= c for the Lorentz family).
double theta_of_velocity(const GroupSpec& g, double u);

}  // namespace covhyp
