#include "covhyp/construction.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace covhyp {

namespace {

std::string describe_state(const State& w) {
  std::ostringstream os;
  os << "(rho=" << w.rho << ", J=" << w.J << ")";
  return os.str();
}

}  // namespace

CovariantSystem::CovariantSystem(GroupSpec group, RepSpec rep, EntropyDatum datum,
                                 ProjectionSpec projection, ValiditySpec validity,
                                 std::string name)
    : group_(group),
      rep_(rep),
      datum_(std::move(datum)),
      projection_(projection),
      validity_(std::move(validity)),
      name_(std::move(name)) {
  if (!datum_.sigma || !datum_.sigma_prime || !datum_.sigma_second) {
    throw InvalidParameter("entropy datum must provide sigma, sigma', sigma''");
  }
  if (!validity_.contains) {
    throw InvalidParameter("validity predicate must be set");
  }
  if (!(projection_.chart_theta_max > 0.0)) {
    throw InvalidParameter("chart half-width must be positive");
  }
}

double CovariantSystem::m_of(double rho0) const {
  return datum_.sigma(rho0) / datum_.sigma_prime(rho0);
}

void CovariantSystem::require_valid(const State& w) const {
  if (!std::isfinite(w.rho) || !std::isfinite(w.J) || !validity_.contains(w)) {
    throw OutsideValidity("state " + describe_state(w) + " outside validity domain of " +
                          name_ + " [" + validity_.description + "]");
  }
}

void CovariantSystem::require_fiber(const FiberPoint& fp) const {
  if (!std::isfinite(fp.theta) || !std::isfinite(fp.rho0) || !datum_.contains(fp.rho0)) {
    std::ostringstream os;
    os << "fiber point (theta=" << fp.theta << ", rho0=" << fp.rho0
       << ") outside the domain of datum " << datum_.name;
    throw DomainError(os.str());
  }
  if (std::fabs(fp.theta) >= projection_.chart_theta_max) {
    std::ostringstream os;
    os << "theta=" << fp.theta << " outside the invertible chart |theta| < "
       << projection_.chart_theta_max;
    throw DomainError(os.str());
  }
}

bool CovariantSystem::in_validity(const State& w) const {
  return std::isfinite(w.rho) && std::isfinite(w.J) && validity_.contains(w);
}

State CovariantSystem::lift_state(const FiberPoint& fp) const {
  require_fiber(fp);
  const TrigPair g = trig(group_.epsilon, fp.theta);
  State w;
  if (group_.epsilon == 0) {
    // W = C_theta Y_theta W0 with C_theta = 1; the rest flux drops out, so
    // every representation flag is admissible here.
    const TrigPair r = trig(rep_.epsilon_tilde, fp.theta);
    w.rho = r.C * fp.rho0;
    w.J = rep_.a * r.S * fp.rho0;
  } else if (group_.epsilon == rep_.epsilon_tilde) {
    const double m = m_of(fp.rho0);
    w.rho = fp.rho0 + group_.epsilon * g.S * g.S * m;
    w.J = rep_.a * g.S * g.C * m;
  } else {
    if (rep_.epsilon_tilde == 0) {
      throw UnsupportedRepresentation("general lift needs eps_tilde^2 == 1");
    }
    const TrigPair r = trig(rep_.epsilon_tilde, fp.theta);
    const double e = group_.epsilon;
    const double et = rep_.epsilon_tilde;
    const double m = m_of(fp.rho0);
    const double A = g.C * r.C - e * g.S * r.S;
    const double B = g.C * r.S - e * et * g.S * r.C;
    w.rho = A * fp.rho0 + e * g.S * r.S * m;
    w.J = rep_.a * (B * fp.rho0 + e * et * g.S * r.C * m);
  }
  if (!in_validity(w)) {
    throw OutsideValidity("lift of (theta=" + std::to_string(fp.theta) +
                          ", rho0=" + std::to_string(fp.rho0) +
                          ") leaves the validity domain of " + name_);
  }
  return w;
}

FiberPoint CovariantSystem::project_root_solve(const State& w) const {
  // F(rho0) = rho0 - m/2 + hypot(m, 2J/a)/2 with m = sigma/sigma' is
  // increasing on the bracket and F(0) = |J|/a exactly when m(0) = 0.
  const double K = 2.0 * w.J / rep_.a;
  const auto F = [this, K](double r0) {
    const double m = m_of(r0);
    return r0 - 0.5 * m + 0.5 * std::hypot(m, K);
  };
  const double tol = 1e-13 * std::fmax(1.0, std::fabs(w.rho));
  double lo = projection_.bracket_lo;
  double hi = projection_.bracket_hi;
  if (F(lo) - w.rho > tol || F(hi) - w.rho < -tol) {
    throw OutsideValidity("state " + describe_state(w) + " not bracketed by [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  // Bisect to machine precision: finite-difference probes of downstream
  // quantities divide by h^2, so a coarser stop would leak quantization noise
  // into every Hessian check. The interval collapses after ~55 halvings.
  double mid = lo;
  double res = F(lo) - w.rho;
  bool converged = std::fabs(res) <= tol;
  for (int it = 0; it < 200 && !converged; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      converged = true;  // no representable point remains between lo and hi
      break;
    }
    res = F(mid) - w.rho;
    if (res == 0.0) {
      converged = true;
      break;
    }
    if (res < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!converged && std::fabs(res) > tol) {
    throw NoConvergence("bisection residual " + std::to_string(res) + " above tolerance for " +
                        describe_state(w));
  }
  const double rho0 = mid;
  const double m = m_of(rho0);
  const double theta = (K == 0.0) ? 0.0 : 0.5 * std::asinh(K / m);
  return {theta, rho0};
}

FiberPoint CovariantSystem::project_state(const State& w) const {
  require_valid(w);
  switch (projection_.kind) {
    case ProjectionKind::closed_form: {
      if (group_.epsilon == 0) {
        const double x = w.J / (rep_.a * w.rho);
        double theta = 0.0;
        switch (rep_.epsilon_tilde) {
          case 1:
            theta = std::atanh(x);
            break;
          case -1:
            theta = std::atan(x);
            break;
          default:
            theta = x;
            break;
        }
        const TrigPair r = trig(rep_.epsilon_tilde, theta);
        return {theta, w.rho / r.C};
      }
      if (group_.epsilon == -1 && rep_.epsilon_tilde == -1) {
        const double psi = 2.0 * w.J / (rep_.a * projection_.m_const);
        const double root = std::sqrt(1.0 - psi * psi);
        const double theta = 0.5 * std::asin(psi);
        const double rho0 = w.rho + 0.5 * (1.0 - root) * projection_.m_const;
        return {theta, rho0};
      }
      throw UnsupportedCombination("no closed-form projection for (eps=" +
                                   std::to_string(group_.epsilon) + ", eps_tilde=" +
                                   std::to_string(rep_.epsilon_tilde) + ")");
    }
    case ProjectionKind::root_solve: {
      if (group_.epsilon != 1 || rep_.epsilon_tilde != 1) {
        throw UnsupportedCombination("root-solve projection is shipped for eps = eps_tilde = +1");
      }
      return project_root_solve(w);
    }
    case ProjectionKind::none:
    default:
      throw UnsupportedCombination("no projection shipped for (eps=" +
                                   std::to_string(group_.epsilon) + ", eps_tilde=" +
                                   std::to_string(rep_.epsilon_tilde) + ")");
  }
}

double CovariantSystem::entropy(const State& w) const {
  const FiberPoint fp = project_state(w);
  return trig(group_.epsilon, fp.theta).C * datum_.sigma(fp.rho0);
}

double CovariantSystem::velocity(const State& w) const {
  const FiberPoint fp = project_state(w);
  return velocity_of_theta(group_, fp.theta);
}

double CovariantSystem::dual_entropy(const State& w) const {
  const FiberPoint fp = project_state(w);
  return trig(group_.epsilon, fp.theta).C * sigma_star(datum_, fp.rho0);
}

EntropyVariables CovariantSystem::entropy_variables(const State& w) const {
  const FiberPoint fp = project_state(w);
  const double delta = jacobian_delta(fp);
  const double scale = 1e-14 * rep_.a * std::fmax(1.0, std::fabs(m_of(fp.rho0)));
  if (std::fabs(delta) < scale) {
    throw SingularJacobian("fiber Jacobian determinant " + std::to_string(delta) +
                           " vanishes at state " + describe_state(w));
  }
  const TrigPair r = trig(rep_.epsilon_tilde, fp.theta);
  const double sp = datum_.sigma_prime(fp.rho0);
  return {r.C * sp, -(rep_.epsilon_tilde / rep_.a) * r.S * sp};
}

Vec2 CovariantSystem::thermo_flux_at(const FiberPoint& fp) const {
  const TrigPair g = trig(group_.epsilon, fp.theta);
  if (std::fabs(g.C) < 1e-13) {
    throw DegenerateFrame("C(theta) vanishes; thermo flux undefined at theta = " +
                          std::to_string(fp.theta));
  }
  const double p0 = pressure(datum_, rep_, group_.c, fp.rho0);
  const Vec2 g0{0.0, p0};
  return (1.0 / g.C) * (rep_matrix(rep_, fp.theta) * g0);
}

Vec2 CovariantSystem::thermo_flux(const State& w) const {
  const FiberPoint fp = project_state(w);
  if (flux_fault_ == 1.0) {
    return thermo_flux_at(fp);
  }
  // Faulted fixture: keep g consistent with the corrupted f via g = f - u W.
  const Vec2 f = flux(w);
  const double u = velocity_of_theta(group_, fp.theta);
  return {f.x - u * w.rho, f.y - u * w.J};
}

Vec2 CovariantSystem::flux(const State& w) const {
  const FiberPoint fp = project_state(w);
  const double u = velocity_of_theta(group_, fp.theta);
  const Vec2 g = thermo_flux_at(fp);
  Vec2 f{u * w.rho + g.x, u * w.J + g.y};
  f.x *= flux_fault_;
  return f;
}

Mat2 CovariantSystem::fiber_jacobian(const FiberPoint& fp) const {
  require_fiber(fp);
  if (group_.epsilon != 0 && rep_.epsilon_tilde == 0) {
    throw UnsupportedRepresentation("fiber Jacobian needs eps_tilde^2 == 1 when eps != 0");
  }
  const TrigPair g = trig(group_.epsilon, fp.theta);
  const TrigPair r = trig(rep_.epsilon_tilde, fp.theta);
  const double e = group_.epsilon;
  const double et = rep_.epsilon_tilde;
  const double m = m_of(fp.rho0);
  const double z0 = zeta0(datum_, fp.rho0);
  // rho = A rho0 + e S St m, J/a = B rho0 + e et S Ct m with
  // A = C Ct - e S St, B = C St - e et S Ct; dC/dtheta = e S, dCt/dtheta = et St.
  const double A = g.C * r.C - e * g.S * r.S;
  const double B = g.C * r.S - e * et * g.S * r.C;
  const double dA = e * g.S * r.C + et * g.C * r.S - e * (g.C * r.S + g.S * r.C);
  const double dB = e * g.S * r.S + g.C * r.C - e * et * (g.C * r.C + et * g.S * r.S);
  const double dSSt = g.C * r.S + g.S * r.C;
  const double dSCt = g.C * r.C + et * g.S * r.S;
  Mat2 M;
  M.m00 = dA * fp.rho0 + e * dSSt * m;                      // d rho / d theta
  M.m01 = A + e * g.S * r.S * z0;                           // d rho / d rho0
  M.m10 = rep_.a * (dB * fp.rho0 + e * et * dSCt * m);      // d J / d theta
  M.m11 = rep_.a * (B + e * et * g.S * r.C * z0);           // d J / d rho0
  return M;
}

double CovariantSystem::jacobian_delta(const FiberPoint& fp) const {
  require_fiber(fp);
  const TrigPair g = trig(group_.epsilon, fp.theta);
  if (group_.epsilon == 0) {
    // Direct differentiation of rho = Ct rho0, J = a St rho0 with
    // Ct^2 - eps_t St^2 = 1; the expanded determinant below assumes eps^2 = 1
    // and does not cover this family.
    return -rep_.a * fp.rho0;
  }
  if (rep_.epsilon_tilde == 0) {
    throw UnsupportedRepresentation("jacobian_delta needs eps_tilde^2 == 1 when eps != 0");
  }
  const double e = group_.epsilon;
  const double et = rep_.epsilon_tilde;
  const double m = m_of(fp.rho0);
  const double z0 = zeta0(datum_, fp.rho0);
  if (group_.epsilon == rep_.epsilon_tilde) {
    const double delta = e * g.S * g.S * z0 - (g.C * g.C + e * g.S * g.S);
    return rep_.a * delta * m;
  }
  const double C2 = g.C * g.C;
  const double S2 = g.S * g.S;
  return rep_.a * ((e * et - 1.0) * C2 * fp.rho0 - et * (S2 + e * C2) * m + et * S2 * m * z0);
}

ConvexityDiagnostics CovariantSystem::convexity_diagnostics(const FiberPoint& fp) const {
  const double delta = jacobian_delta(fp);
  const double scale = 1e-14 * rep_.a * std::fmax(1.0, std::fabs(m_of(fp.rho0)));
  if (std::fabs(delta) < scale) {
    throw SingularJacobian("fiber Jacobian determinant vanishes at theta = " +
                           std::to_string(fp.theta));
  }
  const double sp = datum_.sigma_prime(fp.rho0);
  const double spp = datum_.sigma_second(fp.rho0);
  const TrigPair r = trig(rep_.epsilon_tilde, fp.theta);
  const Mat2 M = fiber_jacobian(fp);
  ConvexityDiagnostics out;
  out.det_hessian = rep_.epsilon_tilde * sp * spp / (rep_.a * delta);
  // d2 eta/d rho2 = d alpha/d rho with alpha = Ct sigma'; the inverse Jacobian
  // gives d theta/d rho = M11/Delta and d rho0/d rho = -M10/Delta.
  out.d2eta_drho2 = (rep_.epsilon_tilde * r.S * sp * M.m11 - r.C * spp * M.m10) / delta;
  return out;
}

double CovariantSystem::compatibility_residual(const State& w, const State& dw) const {
  const double n = std::hypot(dw.rho, dw.J);
  if (n == 0.0) {
    return 0.0;
  }
  const double ux = dw.rho / n;
  const double uy = dw.J / n;
  const double h = 1e-6 * (1.0 + std::fmax(std::fabs(w.rho), std::fabs(w.J)));
  const State wp{w.rho + h * ux, w.J + h * uy};
  const State wm{w.rho - h * ux, w.J - h * uy};
  const Vec2 dg = (1.0 / (2.0 * h)) * (thermo_flux(wp) - thermo_flux(wm));
  const double du = (velocity(wp) - velocity(wm)) / (2.0 * h);
  const EntropyVariables phi = entropy_variables(w);
  return phi.alpha * dg.x + phi.beta * dg.y + dual_entropy(w) * du;
}

CovarianceResidual CovariantSystem::covariance_residual(const State& w, double theta_g) const {
  const FiberPoint fp = project_state(w);
  const double theta_total = fp.theta + theta_g;
  if (std::fabs(theta_total) >= projection_.chart_theta_max) {
    std::ostringstream os;
    os << "transport to theta=" << theta_total << " leaves the invertible chart |theta| < "
       << projection_.chart_theta_max;
    throw OutsideValidity(os.str());
  }
  const TrigPair gg = trig(group_.epsilon, theta_g);
  const double Ga = gg.C;                               // G = [[Ga, Gd], [Gb, Gg]]
  const double Gd = group_.c * gg.S;
  const double Gb = (group_.epsilon / group_.c) * gg.S;
  const double Gg = gg.C;
  const Mat2 Y = rep_matrix(rep_, theta_g);
  const Vec2 Wv{w.rho, w.J};
  const Vec2 fv = flux(w);
  const Vec2 YW = Y * Wv;
  const Vec2 Yf = Y * fv;
  const State wt{Gg * YW.x + Gb * Yf.x, Gg * YW.y + Gb * Yf.y};
  if (!in_validity(wt)) {
    throw OutsideValidity("transported state " + describe_state(wt) +
                          " leaves the validity domain of " + name_);
  }
  const Vec2 f_target{Ga * Yf.x + Gd * YW.x, Ga * Yf.y + Gd * YW.y};
  const Vec2 f_t = flux(wt);
  CovarianceResidual res;
  res.state_flux = norm(f_t - f_target);
  const double eta = entropy(w);
  const double u = velocity(w);
  const double eta_t = entropy(wt);
  const double u_t = velocity(wt);
  const Vec2 pair_target{Ga * (eta * u) + Gd * eta, Gb * (eta * u) + Gg * eta};
  res.entropy_pair = norm(Vec2{eta_t * u_t, eta_t} - pair_target);
  return res;
}

Mat2 CovariantSystem::flux_jacobian(const State& w) const {
  const double hr = 1e-6 * (1.0 + std::fabs(w.rho));
  const double hj = 1e-6 * (1.0 + std::fabs(w.J));
  const Vec2 frp = flux({w.rho + hr, w.J});
  const Vec2 frm = flux({w.rho - hr, w.J});
  const Vec2 fjp = flux({w.rho, w.J + hj});
  const Vec2 fjm = flux({w.rho, w.J - hj});
  Mat2 M;
  M.m00 = (frp.x - frm.x) / (2.0 * hr);
  M.m10 = (frp.y - frm.y) / (2.0 * hr);
  M.m01 = (fjp.x - fjm.x) / (2.0 * hj);
  M.m11 = (fjp.y - fjm.y) / (2.0 * hj);
  return M;
}

CovariantSystem CovariantSystem::with_flux_fault(double f1_scale) const {
  if (!(f1_scale > 0.0) || !std::isfinite(f1_scale)) {
    throw InvalidParameter("flux fault scale must be positive and finite");
  }
  CovariantSystem out = *this;
  out.flux_fault_ = f1_scale;
  return out;
}

}  // namespace covhyp
