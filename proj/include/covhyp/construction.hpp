// Generic two-component covariant system built from null-velocity-manifold
// data. Every admissible state W = (rho, J) is the group transport of a rest
// state W0 = (rho0, 0):
//
//   W    = C_theta Y_theta W0 + (eps/c) S_theta Y_theta g0,   g0 = (0, p0),
//   f(W) = c S_theta Y_theta W0 + C_theta Y_theta g0,
//   eta  = C_theta sigma(rho0),       g(W) = (1/C_theta) Y_theta g0,
//   u    = c S_theta / C_theta,       f = u W + g.
//
// With eps == eps_tilde the state map simplifies to
//   rho = rho0 + eps S^2 (sigma/sigma'),   J = a S C (sigma/sigma').
//
// The class is immutable after construction and all evaluations are pure.
#pragma once

#include <functional>
#include <limits>
#include <string>

#include "covhyp/kinematics.hpp"
#include "covhyp/manifold.hpp"
#include "covhyp/mat2.hpp"

namespace covhyp {

struct State {
  double rho = 0.0;
  double J = 0.0;
};

struct FiberPoint {
  double theta = 0.0;
  double rho0 = 0.0;
};

/// Gradient of the entropy with respect to the conserved state.
struct EntropyVariables {
  double alpha = 0.0;  // d(eta)/d(rho) = Ct_theta sigma'(rho0)
  double beta = 0.0;   // d(eta)/d(J)   = -(eps_t/a) St_theta sigma'(rho0)
};

struct ConvexityDiagnostics {
  double det_hessian = 0.0;
  double d2eta_drho2 = 0.0;
};

struct CovarianceResidual {
  double state_flux = 0.0;    // || f(W') - [c S Y W + C Y f(W)] ||
  double entropy_pair = 0.0;  // || (eta' u', eta') - G (eta u, eta) ||
};

enum class ProjectionKind {
  closed_form,  // circular (constant sigma/sigma') and Galileo inverses
  root_solve,   // bisection of F(rho0) = rho on a fixed bracket
  none,         // lift only; project_state throws UnsupportedCombination
};

struct ProjectionSpec {
  ProjectionKind kind = ProjectionKind::none;
  // root_solve: rho0 bracket.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  // closed_form circular branch: the constant value of sigma/sigma'.
  double m_const = 0.0;
  // Half-width of the invertible chart in theta; lift and transported states
  // outside it are rejected (the state map is not injective beyond).
  double chart_theta_max = std::numeric_limits<double>::infinity();
};

struct ValiditySpec {
  std::function<bool(const State&)> contains;  // margin-strict predicate
  std::string description;
};

class CovariantSystem {
 public:
  CovariantSystem(GroupSpec group, RepSpec rep, EntropyDatum datum,
                  ProjectionSpec projection, ValiditySpec validity, std::string name);

  const GroupSpec& group() const { return group_; }
  const RepSpec& rep() const { return rep_; }
  const EntropyDatum& datum() const { return datum_; }
  const ProjectionSpec& projection() const { return projection_; }
  const std::string& name() const { return name_; }
  const std::string& validity_description() const { return validity_.description; }

  /// Margin-strict validity test; never throws.
  bool in_validity(const State& w) const;

  /// Fiber -> state map. Throws DomainError if the fiber point leaves the
  /// datum domain or the chart, OutsideValidity if the image state does.
  State lift_state(const FiberPoint& fp) const;

  /// State -> fiber inverse on the chart. Strategies: closed form (circular
  /// with constant sigma/sigma', Galileo) or bisection of F(rho0) = rho.
  FiberPoint project_state(const State& w) const;

  double entropy(const State& w) const;
  double velocity(const State& w) const;
  double dual_entropy(const State& w) const;  // eta* = C_theta sigma*(rho0)
  EntropyVariables entropy_variables(const State& w) const;
  Vec2 thermo_flux(const State& w) const;
  Vec2 flux(const State& w) const;

  /// Analytic Jacobian d(rho,J)/d(theta,rho0) of the lift and its closed-form
  /// determinant Delta. With eps == eps_tilde,
  ///   Delta = a (sigma/sigma') [eps S^2 zeta0 - (C^2 + eps S^2)];
  /// general invertible representations use the expanded determinant and the
  /// Galileo family reduces to Delta = -a rho0.
  Mat2 fiber_jacobian(const FiberPoint& fp) const;
  double jacobian_delta(const FiberPoint& fp) const;

  /// det(d^2 eta) = eps_t sigma' sigma'' / (a Delta) and d^2 eta / d rho^2 by
  /// the chain rule through the fiber Jacobian. Both strictly positive on the
  /// validity interior of the shipped systems.
  ConvexityDiagnostics convexity_diagnostics(const FiberPoint& fp) const;

  /// Central-difference residual of  phi . dg + eta* du  along direction dw.
  double compatibility_residual(const State& w, const State& dw) const;

  /// Transport residuals of (f(W'), W')^T = G_theta_g (Y f(W), Y W)^T and of
  /// the entropy pair (eta u, eta). Throws OutsideValidity when the transport
  /// leaves the chart or the validity domain.
  CovarianceResidual covariance_residual(const State& w, double theta_g) const;

  /// Central-difference df/dW, step 1e-6 (1 + |component|).
  Mat2 flux_jacobian(const State& w) const;

  /// Checker-sensitivity fixture: returns a copy whose first flux component
  /// is scaled by `f1_scale` (thermo flux kept consistent via g = f - u W).
  /// Covariance and compatibility checks must fail on a faulted system.
  CovariantSystem with_flux_fault(double f1_scale) const;
  double flux_fault() const { return flux_fault_; }

 private:
  GroupSpec group_;
  RepSpec rep_;
  EntropyDatum datum_;
  ProjectionSpec projection_;
  ValiditySpec validity_;
  std::string name_;
  double flux_fault_ = 1.0;

  double m_of(double rho0) const;  // sigma/sigma'
  void require_valid(const State& w) const;
  void require_fiber(const FiberPoint& fp) const;
  FiberPoint project_root_solve(const State& w) const;
  Vec2 thermo_flux_at(const FiberPoint& fp) const;  // clean pipeline value
};

/// Eigenvalues of a flux Jacobian, ascending. Throws ComplexEigenvalues.
inline Eigenpair eigenvalues(const Mat2& m) { return real_eigenvalues(m); }

}  // namespace covhyp
