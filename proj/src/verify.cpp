#include "covhyp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "covhyp/errors.hpp"
#include "covhyp/format.hpp"

namespace covhyp {
namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Stable string hash (FNV-1a) so per-check seeds do not depend on the
// standard library implementation.
std::uint64_t tag_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

struct Tracker {
  long samples = 0;
  double max_res = 0.0;
  std::string worst;

  void update(double r, const std::string& where) {
    ++samples;
    if (worst.empty() || r > max_res) {
      max_res = r;
      worst = where;
    }
  }
};

CheckResult finish(const std::string& name, const Tracker& t, double tol) {
  CheckResult r;
  r.name = name;
  r.samples = t.samples;
  r.max_residual = t.max_res;
  r.tolerance = tol;
  r.pass = t.max_res <= tol;
  r.worst = t.worst;
  return r;
}

struct Suite {
  const SystemDescriptor& d;
  const CovariantSystem& sys;
  std::uint64_t seed;
  long n;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  Suite(const SystemDescriptor& d_, std::uint64_t seed_, long n_)
      : d(d_), sys(d_.system), seed(seed_), n(n_) {}

  Rng rng_for(const std::string& check) const { return Rng(seed ^ tag_hash(check)); }

  FiberPoint sample(Rng& rng) const { return sample_interior_fiber(d, rng); }

  std::string where(const FiberPoint& fp) const {
    return "theta=" + fmt9(fp.theta) + " rho0=" + fmt9(fp.rho0);
  }
  std::string where(const State& w) const {
    return "rho=" + fmt9(w.rho) + " J=" + fmt9(w.J);
  }

  void add(const std::string& name, double tol, const Tracker& t) {
    checks.push_back(finish(name, t, tol));
  }

  // ---- individual checks ---------------------------------------------------

  void bracket_endpoints() {
    if (d.id != SystemId::lorentz_hyperbolic) return;
    Rng rng = rng_for("bracket_endpoints");
    Tracker t;
    const double rs = d.params.rho_star;
    const double a = d.params.a;
    auto F = [&](double rho0, double J) {
      const double m = rho0 * (rho0 + rs) / rs;
      return rho0 - 0.5 * m + 0.5 * std::hypot(m, 2.0 * J / a);
    };
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      // F(0) = |J|/a exactly; F(rho_star/2) >= rho_star/2; the bisection root
      // reproduces rho (root located to 1e-13 relative, F' bounded by ~2.2 on
      // the bracket, so the F-residual stays below 1e-12 relative).
      double r = std::abs(F(0.0, w.J) - std::abs(w.J) / a);
      r = std::max(r, std::max(0.0, 0.5 * rs - F(0.5 * rs, w.J)));
      r = std::max(r, std::max(0.0, F(0.0, w.J) - w.rho));
      r = std::max(r, std::max(0.0, w.rho - F(0.5 * rs, w.J)));
      const double rho0 = sys.project_state(w).rho0;
      r = std::max(r, std::abs(F(rho0, w.J) - w.rho) / std::max(1.0, std::abs(w.rho)));
      t.update(r, where(w));
    }
    add("bracket_endpoints", 1e-12, t);
  }

  void chart_exit_detection() {
    const double chart = sys.projection().chart_theta_max;
    if (!std::isfinite(chart)) return;
    Rng rng = rng_for("chart_exit_detection");
    Tracker t;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      // Land the transported angle just past the chart but short of 2*chart,
      // where the lifted state itself can look admissible again.
      const double target = rng.sign() * rng.uniform(chart * 1.01, chart * 1.95);
      const double theta_g = target - fp.theta;
      double r = 1.0;
      std::string note = "no exception";
      try {
        (void)sys.covariance_residual(w, theta_g);
      } catch (const OutsideValidity&) {
        r = 0.0;
      } catch (const Error& e) {
        note = std::string("wrong exception: ") + e.what();
      }
      t.update(r, r == 0.0 ? where(fp) : where(fp) + " " + note);
    }
    add("chart_exit_detection", 0.0, t);
  }

  void compatibility() {
    Rng rng = rng_for("compatibility");
    Tracker t;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      const State dw{rng.sign() * rng.uniform(0.2, 1.0), rng.sign() * rng.uniform(0.2, 1.0)};
      t.update(std::abs(sys.compatibility_residual(w, dw)), where(w));
    }
    add("compatibility", 1e-5, t);
  }

  void constraint_pressure() {
    Rng rng = rng_for("constraint_pressure");
    Tracker t;
    double lo = 0.0, hi = 0.0;
    interior_rho0_bounds(d, lo, hi);
    const RepSpec& rep = sys.rep();
    const double c = sys.group().c;
    for (long i = 0; i < n; ++i) {
      const double rho0 = rng.uniform(lo, hi);
      const ThermoPoint tp = thermo_point(sys.datum(), rep, c, rho0);
      const double lhs =
          tp.sigma_star + (rep.epsilon_tilde / (rep.a * c)) * sys.datum().sigma_prime(rho0) * tp.p0;
      t.update(std::abs(lhs) / std::max(1.0, std::abs(tp.sigma_star)), "rho0=" + fmt9(rho0));
    }
    add("constraint_pressure", 1e-12, t);
  }

  void constraint_rest_state() {
    Rng rng = rng_for("constraint_rest_state");
    Tracker t;
    double lo = 0.0, hi = 0.0;
    interior_rho0_bounds(d, lo, hi);
    for (long i = 0; i < n; ++i) {
      const double rho0 = rng.uniform(lo, hi);
      const State w = sys.lift_state(FiberPoint{0.0, rho0});
      const EntropyVariables phi = sys.entropy_variables(w);
      const Vec2 g = sys.thermo_flux(w);
      t.update(std::abs(phi.alpha * g.x + phi.beta * g.y), where(w));
    }
    add("constraint_rest_state", 0.0, t);
  }

  void convexity_positive() {
    Tracker t;
    double lo = 0.0, hi = 0.0;
    interior_rho0_bounds(d, lo, hi);
    const int nr = 100, nt = 100;
    double min_det = std::numeric_limits<double>::infinity();
    double min_d2 = std::numeric_limits<double>::infinity();
    std::string at_det, at_d2;
    for (int i = 0; i < nr; ++i) {
      const double rho0 = lo + (hi - lo) * (i + 0.5) / nr;
      const double tb = interior_theta_bound(d, rho0);
      for (int j = 0; j < nt; ++j) {
        const FiberPoint fp{-tb + 2.0 * tb * j / (nt - 1), rho0};
        const ConvexityDiagnostics cd = sys.convexity_diagnostics(fp);
        ++t.samples;
        if (cd.det_hessian < min_det) {
          min_det = cd.det_hessian;
          at_det = where(fp);
        }
        if (cd.d2eta_drho2 < min_d2) {
          min_d2 = cd.d2eta_drho2;
          at_d2 = where(fp);
        }
      }
    }
    t.max_res = std::max(0.0, std::max(-min_det, -min_d2));
    t.worst = "min det(d2 eta)=" + fmt9(min_det) + " at " + at_det +
              "; min d2eta/drho2=" + fmt9(min_d2) + " at " + at_d2;
    add("convexity_positive", 0.0, t);
  }

  void covariance() {
    Rng rng = rng_for("covariance");
    Tracker t;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const double tb = interior_theta_bound(d, fp.rho0);
      const double theta2 = rng.uniform(-tb, tb);
      const State w = sys.lift_state(fp);
      const CovarianceResidual r = sys.covariance_residual(w, theta2 - fp.theta);
      t.update(std::max(r.state_flux, r.entropy_pair),
               where(fp) + " theta_g=" + fmt9(theta2 - fp.theta));
    }
    add("covariance", 1e-9, t);
  }

  void entropy_closed_form() {
    if (d.id != SystemId::circular_elliptic && d.id != SystemId::lorentz_hyperbolic) return;
    Rng rng = rng_for("entropy_closed_form");
    Tracker t;
    const double rs = d.params.rho_star;
    const double a = d.params.a;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      double expected = 0.0;
      if (d.id == SystemId::circular_elliptic) {
        const double psi = 2.0 * w.J / (a * rs);
        const double root = std::sqrt(1.0 - psi * psi);
        const double rho0 = w.rho + 0.5 * (1.0 - root) * rs;
        expected = std::sqrt(0.5 * (1.0 + root)) * sys.datum().sigma(rho0);
      } else {
        const double rho0 = sys.project_state(w).rho0;
        const double m = rho0 * (rho0 + rs) / rs;
        const double phi = 2.0 * w.J / (a * m);
        const double root = std::sqrt(1.0 + phi * phi);
        expected = std::sqrt(0.5 * (1.0 + root)) * sys.datum().sigma(rho0);
      }
      const double eta = sys.entropy(w);
      t.update(std::abs(eta - expected) / std::max(1.0, std::abs(eta)), where(w));
    }
    add("entropy_closed_form", 1e-12, t);
  }

  void entropy_flux_differential() {
    Rng rng = rng_for("entropy_flux_differential");
    Tracker t;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      const double dr = rng.sign() * rng.uniform(0.2, 1.0);
      const double dj = rng.sign() * rng.uniform(0.2, 1.0);
      const double scale = std::hypot(dr, dj);
      const double h = 1e-6 * (1.0 + std::max(std::abs(w.rho), std::abs(w.J)));
      const State wp{w.rho + h * dr / scale, w.J + h * dj / scale};
      const State wm{w.rho - h * dr / scale, w.J - h * dj / scale};
      const double dzeta =
          (sys.entropy(wp) * sys.velocity(wp) - sys.entropy(wm) * sys.velocity(wm)) / (2.0 * h);
      const Vec2 fp_ = sys.flux(wp);
      const Vec2 fm_ = sys.flux(wm);
      const Vec2 df{(fp_.x - fm_.x) / (2.0 * h), (fp_.y - fm_.y) / (2.0 * h)};
      const EntropyVariables phi = sys.entropy_variables(w);
      t.update(std::abs(dzeta - (phi.alpha * df.x + phi.beta * df.y)), where(w));
    }
    add("entropy_flux_differential", 1e-5, t);
  }

  void entropy_gradient() {
    Rng rng = rng_for("entropy_gradient");
    Tracker t;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      const EntropyVariables phi = sys.entropy_variables(w);
      const double hr = 1e-6 * (1.0 + std::abs(w.rho));
      const double hj = 1e-6 * (1.0 + std::abs(w.J));
      const double fd_a =
          (sys.entropy(State{w.rho + hr, w.J}) - sys.entropy(State{w.rho - hr, w.J})) / (2.0 * hr);
      const double fd_b =
          (sys.entropy(State{w.rho, w.J + hj}) - sys.entropy(State{w.rho, w.J - hj})) / (2.0 * hj);
      const double r = std::max(std::abs(fd_a - phi.alpha) / std::max(1.0, std::abs(phi.alpha)),
                                std::abs(fd_b - phi.beta) / std::max(1.0, std::abs(phi.beta)));
      t.update(r, where(w));
    }
    add("entropy_gradient", 1e-6, t);
  }

  void flux_closed_form() {
    Rng rng = rng_for("flux_closed_form");
    Tracker t;
    const double rs = d.params.rho_star;
    const double a = d.params.a;
    const double c = d.params.c;
    double worst_rejected = 0.0;  // lorentz only: the (rho + rho0/rho_star) u variant
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      const Vec2 f = sys.flux(w);
      double e1 = 0.0, e2 = 0.0;
      switch (d.id) {
        case SystemId::circular_elliptic: {
          const double psi = 2.0 * w.J / (a * rs);
          const double theta = 0.5 * std::asin(psi);
          const double rho0 = w.rho + 0.5 * (1.0 - std::cos(2.0 * theta)) * rs;
          const double u = c * std::tan(theta);
          e1 = (c / a) * w.J;
          e2 = u * w.J + a * c * (rho0 - rs);
          break;
        }
        case SystemId::lorentz_hyperbolic: {
          const double rho0 = sys.project_state(w).rho0;
          const double m = rho0 * (rho0 + rs) / rs;
          const double theta = 0.5 * std::asinh(2.0 * w.J / (a * m));
          const double u = c * std::tanh(theta);
          e1 = (w.rho + rho0 * rho0 / rs) * u;
          e2 = u * w.J + a * c * rho0 * rho0 / rs;
          worst_rejected =
              std::max(worst_rejected, std::abs(f.x - (w.rho + rho0 / rs) * u));
          break;
        }
        case SystemId::galileo_hyperbolic:
        case SystemId::galileo_elliptic: {
          const int et = sys.rep().epsilon_tilde;
          const double theta = et == 1 ? std::atanh(w.J / (a * w.rho))
                                       : std::atan(w.J / (a * w.rho));
          const TrigPair y = trig(et, theta);
          const double rho0 = w.rho / y.C;
          const double p0 = pressure(sys.datum(), sys.rep(), c, rho0);
          e1 = c * theta * w.rho + (et / a) * y.S * p0;
          e2 = c * theta * w.J + y.C * p0;
          break;
        }
      }
      const double r = std::max(std::abs(f.x - e1), std::abs(f.y - e2)) /
                       std::max(1.0, std::max(std::abs(e1), std::abs(e2)));
      t.update(r, where(w));
    }
    add("flux_closed_form", 1e-12, t);
    if (d.id == SystemId::lorentz_hyperbolic) {
      notes.push_back(
          "flux_closed_form: the first flux component equals (rho + rho0^2/rho_star) u; "
          "the variant (rho + rho0/rho_star) u is rejected (worst deviation " +
          fmt9(worst_rejected) + " in this run).");
    }
  }

  void hessian_fd() {
    Rng rng = rng_for("hessian_fd");
    Tracker t;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      const ConvexityDiagnostics cd = sys.convexity_diagnostics(fp);
      auto eta = [&](double r, double j) { return sys.entropy(State{r, j}); };
      const double e0 = eta(w.rho, w.J);
      // Second differences at steps h and h/2 combined by Richardson
      // extrapolation: the determinant's O(h^2) truncation error is otherwise
      // above tolerance where the Hessian entries get large.
      auto entries = [&](double hr, double hj, double out[3]) {
        out[0] = (eta(w.rho + hr, w.J) - 2.0 * e0 + eta(w.rho - hr, w.J)) / (hr * hr);
        out[1] = (eta(w.rho, w.J + hj) - 2.0 * e0 + eta(w.rho, w.J - hj)) / (hj * hj);
        out[2] = (eta(w.rho + hr, w.J + hj) - eta(w.rho + hr, w.J - hj) -
                  eta(w.rho - hr, w.J + hj) + eta(w.rho - hr, w.J - hj)) /
                 (4.0 * hr * hj);
      };
      const double hr = 2e-5 * (1.0 + std::abs(w.rho));
      const double hj = 2e-5 * (1.0 + std::abs(w.J));
      double coarse[3], fine[3];
      entries(hr, hj, coarse);
      entries(0.5 * hr, 0.5 * hj, fine);
      const double hrr = (4.0 * fine[0] - coarse[0]) / 3.0;
      const double hjj = (4.0 * fine[1] - coarse[1]) / 3.0;
      const double hrj = (4.0 * fine[2] - coarse[2]) / 3.0;
      const double det_fd = hrr * hjj - hrj * hrj;
      const double r =
          std::max(std::abs(hrr - cd.d2eta_drho2) / std::max(1.0, std::abs(cd.d2eta_drho2)),
                   std::abs(det_fd - cd.det_hessian) / std::max(1.0, std::abs(cd.det_hessian)));
      t.update(r, where(w));
    }
    add("hessian_fd", 1e-4, t);
  }

  void hyperbolicity() {
    Rng rng = rng_for("hyperbolicity");
    Tracker t;
    double min_disc = std::numeric_limits<double>::infinity();
    std::string at;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      const Mat2 A = sys.flux_jacobian(w);
      const double disc = (A.m00 - A.m11) * (A.m00 - A.m11) + 4.0 * A.m01 * A.m10;
      ++t.samples;
      if (disc < min_disc) {
        min_disc = disc;
        at = where(w);
      }
    }
    t.max_res = std::max(0.0, -min_disc);
    t.worst = "min discriminant=" + fmt9(min_disc) + " at " + at;
    add("hyperbolicity", 0.0, t);
  }

  void jacobian_analytic() {
    Rng rng = rng_for("jacobian_analytic");
    Tracker t;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const double delta = sys.jacobian_delta(fp);
      const double det = sys.fiber_jacobian(fp).det();
      t.update(std::abs(det - delta) / std::max(1.0, std::abs(delta)), where(fp));
    }
    add("jacobian_analytic", 1e-12, t);
  }

  void jacobian_determinant() {
    Rng rng = rng_for("jacobian_determinant");
    Tracker t;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const double ht = 1e-5 * (1.0 + std::abs(fp.theta));
      const double hr = 1e-5 * (1.0 + std::abs(fp.rho0));
      const State wtp = sys.lift_state(FiberPoint{fp.theta + ht, fp.rho0});
      const State wtm = sys.lift_state(FiberPoint{fp.theta - ht, fp.rho0});
      const State wrp = sys.lift_state(FiberPoint{fp.theta, fp.rho0 + hr});
      const State wrm = sys.lift_state(FiberPoint{fp.theta, fp.rho0 - hr});
      const Mat2 Jfd{(wtp.rho - wtm.rho) / (2.0 * ht), (wrp.rho - wrm.rho) / (2.0 * hr),
                     (wtp.J - wtm.J) / (2.0 * ht), (wrp.J - wrm.J) / (2.0 * hr)};
      const double delta = sys.jacobian_delta(fp);
      t.update(std::abs(Jfd.det() - delta) / std::max(1.0, std::abs(delta)), where(fp));
    }
    add("jacobian_determinant", 1e-5, t);
  }

  void legendre_dual() {
    Rng rng = rng_for("legendre_dual");
    Tracker t;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      const EntropyVariables phi = sys.entropy_variables(w);
      const double lhs = phi.alpha * w.rho + phi.beta * w.J - sys.entropy(w);
      const double dual = sys.dual_entropy(w);
      t.update(std::abs(lhs - dual) / std::max(1.0, std::abs(dual)), where(w));
    }
    add("legendre_dual", 1e-10, t);
  }

  void orthogonality() {
    Rng rng = rng_for("orthogonality");
    Tracker t;
    double lo = 0.0, hi = 0.0;
    interior_rho0_bounds(d, lo, hi);
    for (long i = 0; i < n; ++i) {
      const double rho0a = rng.uniform(lo, hi);
      const double rho0b = rng.uniform(lo, hi);
      // Equal-angle pairs must share theta, so bound it by the tighter of the
      // two admissible wedges.
      const double tb =
          std::min(interior_theta_bound(d, rho0a), interior_theta_bound(d, rho0b));
      const FiberPoint fp{rng.uniform(-tb, tb), rho0a};
      const State w = sys.lift_state(fp);
      const EntropyVariables phi = sys.entropy_variables(w);
      // Same state.
      const Vec2 g = sys.thermo_flux(w);
      double r = std::abs(phi.alpha * g.x + phi.beta * g.y);
      // Same transport angle, different rest density.
      const Vec2 gb = sys.thermo_flux(sys.lift_state(FiberPoint{fp.theta, rho0b}));
      r = std::max(r, std::abs(phi.alpha * gb.x + phi.beta * gb.y));
      // Both at rest.
      const State w0 = sys.lift_state(FiberPoint{0.0, rho0a});
      const EntropyVariables phi0 = sys.entropy_variables(w0);
      const Vec2 g0 = sys.thermo_flux(sys.lift_state(FiberPoint{0.0, rho0b}));
      r = std::max(r, std::abs(phi0.alpha * g0.x + phi0.beta * g0.y));
      t.update(r, where(fp) + " rho0b=" + fmt9(rho0b));
    }
    add("orthogonality", 1e-10, t);
    notes.push_back(
        "orthogonality: the pairing phi(W).g(W~) is checked for same-state, equal-angle, "
        "and rest-state pairs; for two independent transported states it does not vanish "
        "(it is proportional to sin-like(theta~ - theta)) and is not an identity.");
  }

  void reconstruction() {
    Rng rng = rng_for("reconstruction");
    Tracker t;
    const RepSpec& rep = sys.rep();
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      const EntropyVariables phi = sys.entropy_variables(w);
      const TrigPair y = trig(rep.epsilon_tilde, fp.theta);
      const double sp = sys.datum().sigma_prime(fp.rho0);
      const double r1 = phi.alpha * y.C + phi.beta * rep.a * y.S - sp;
      const double r2 = phi.alpha * (rep.epsilon_tilde / rep.a) * y.S + phi.beta * y.C;
      t.update(std::max(std::abs(r1) / std::max(1.0, std::abs(sp)), std::abs(r2)), where(fp));
    }
    add("reconstruction", 1e-10, t);
  }

  void round_trip() {
    Rng rng = rng_for("round_trip");
    Tracker t;
    for (long i = 0; i < n; ++i) {
      const FiberPoint fp = sample(rng);
      const State w = sys.lift_state(fp);
      const FiberPoint back = sys.project_state(w);
      const State w2 = sys.lift_state(back);
      const double r = std::max(
          std::max(std::abs(back.theta - fp.theta) / std::max(1.0, std::abs(fp.theta)),
                   std::abs(back.rho0 - fp.rho0) / std::max(1.0, std::abs(fp.rho0))),
          std::max(std::abs(w2.rho - w.rho) / std::max(1.0, std::abs(w.rho)),
                   std::abs(w2.J - w.J) / std::max(1.0, std::abs(w.J))));
      t.update(r, where(fp));
    }
    add("round_trip", 1e-10, t);
  }
};

}  // namespace

VerifyReport run_suite(const SystemDescriptor& d, std::uint64_t seed, long n_samples) {
  if (n_samples < 1) throw InvalidParameter("verify: n_samples must be >= 1");
  Suite s(d, seed, n_samples);

  s.bracket_endpoints();
  s.chart_exit_detection();
  s.compatibility();
  s.constraint_pressure();
  s.constraint_rest_state();
  s.convexity_positive();
  s.covariance();
  s.entropy_closed_form();
  s.entropy_flux_differential();
  s.entropy_gradient();
  s.flux_closed_form();
  s.hessian_fd();
  s.hyperbolicity();
  s.jacobian_analytic();
  s.jacobian_determinant();
  s.legendre_dual();
  s.orthogonality();
  s.reconstruction();
  s.round_trip();

  VerifyReport rep;
  rep.system = d.name;
  rep.params = d.params;
  rep.seed = seed;
  rep.n_samples = n_samples;
  rep.flux_fault = d.system.flux_fault();
  rep.checks = std::move(s.checks);
  std::sort(rep.checks.begin(), rep.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  rep.notes = std::move(s.notes);
  if (rep.flux_fault != 1.0)
    rep.notes.push_back("flux fault fixture active: first flux component scaled by " +
                        fmt9(rep.flux_fault) + "; covariance and flux checks are expected to fail.");
  rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                             [](const CheckResult& c) { return c.pass; });
  return rep;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  os << "verification report\n";
  os << "system: " << system << "\n";
  os << "params: rho_star=" << fmt17(params.rho_star) << " sigma_bar=" << fmt17(params.sigma_bar)
     << " a=" << fmt17(params.a) << " c=" << fmt17(params.c) << "\n";
  os << "seed: " << seed << "\n";
  os << "samples per check: " << n_samples << "\n";
  if (flux_fault != 1.0) os << "flux_fault: " << fmt17(flux_fault) << "\n";
  std::size_t w = 0;
  for (const CheckResult& c : checks) w = std::max(w, c.name.size());
  for (const CheckResult& c : checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
       << std::string(w - c.name.size() + 2, ' ') << "max_residual=" << fmt9(c.max_residual)
       << "  tol=" << fmt9(c.tolerance) << "  n=" << c.samples;
    if (!c.worst.empty()) os << "  worst: " << c.worst;
    os << "\n";
  }
  for (const std::string& note : notes) os << "note: " << note << "\n";
  os << "overall: " << (all_pass ? "PASS" : "FAIL") << " (" << checks.size() << " checks)\n";
  return os.str();
}

std::string VerifyReport::json() const {
  nlohmann::ordered_json j;
  j["system"] = system;
  j["params"] = {{"rho_star", params.rho_star},
                 {"sigma_bar", params.sigma_bar},
                 {"a", params.a},
                 {"c", params.c}};
  j["seed"] = seed;
  j["n_samples"] = n_samples;
  j["flux_fault"] = flux_fault;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"samples", c.samples},
                           {"max_residual", c.max_residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"worst", c.worst}});
  }
  j["notes"] = notes;
  j["all_pass"] = all_pass;
  return j.dump(2) + "\n";
}

}  // namespace covhyp
