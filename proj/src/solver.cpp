#include "covhyp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "covhyp/errors.hpp"
#include "covhyp/format.hpp"
#include "covhyp/parallel.hpp"

namespace covhyp {
namespace {

State ghost(const Field& field, long i, Boundary bc) {
  const long n = static_cast<long>(field.size());
  if (i >= 0 && i < n) return field[static_cast<std::size_t>(i)];
  if (bc == Boundary::periodic) return field[static_cast<std::size_t>((i + n) % n)];
  return field[static_cast<std::size_t>(i < 0 ? 0 : n - 1)];
}

std::vector<double> cell_wave_speeds(const CovariantSystem& sys, const Field& field) {
  std::vector<double> s(field.size(), 0.0);
  parallel_for(static_cast<long>(field.size()), [&](long begin, long end) {
    for (long i = begin; i < end; ++i)
      s[static_cast<std::size_t>(i)] = spectral_radius(sys.flux_jacobian(field[static_cast<std::size_t>(i)]));
  });
  return s;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void validate(const Grid1D& grid) {
  if (!(grid.x_min < grid.x_max))
    throw InvalidParameter("grid: x_min must be < x_max");
  if (grid.n_cells < 2) throw InvalidParameter("grid: n_cells must be >= 2");
}

void validate(const SimConfig& cfg) {
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0))
    throw InvalidParameter("sim: cfl must lie in (0, 1]");
  if (!(cfg.t_end >= 0.0)) throw InvalidParameter("sim: t_end must be >= 0");
  if (cfg.max_steps < 0) throw InvalidParameter("sim: max_steps must be >= 0");
  if (cfg.snapshot_stride < 0) throw InvalidParameter("sim: snapshot_stride must be >= 0");
}

InitialCondition riemann_init(const State& left, const State& right, double x_split) {
  return [left, right, x_split](double x) { return x < x_split ? left : right; };
}

InitialCondition gaussian_bump(const State& base, double rho_amplitude, double center,
                               double width) {
  if (!(width > 0.0)) throw InvalidParameter("gaussian_bump: width must be > 0");
  return [base, rho_amplitude, center, width](double x) {
    const double arg = (x - center) / width;
    return State{base.rho + rho_amplitude * std::exp(-arg * arg), base.J};
  };
}

Vec2 numerical_flux(const CovariantSystem& sys, const State& wl, const State& wr) {
  const Vec2 fl = sys.flux(wl);
  const Vec2 fr = sys.flux(wr);
  const double s = std::max(spectral_radius(sys.flux_jacobian(wl)),
                            spectral_radius(sys.flux_jacobian(wr)));
  if (!(s > 0.0))
    throw DomainError("numerical_flux: wave speed degenerated to zero");
  return Vec2{0.5 * (fl.x + fr.x) - 0.5 * s * (wr.rho - wl.rho),
              0.5 * (fl.y + fr.y) - 0.5 * s * (wr.J - wl.J)};
}

double max_wave_speed(const CovariantSystem& sys, const Field& field) {
  const std::vector<double> s = cell_wave_speeds(sys, field);
  double m = 0.0;
  for (double v : s) m = std::max(m, v);
  return m;
}

void step(const CovariantSystem& sys, const Grid1D& grid, Boundary bc, double dt,
          double t, Field& field) {
  validate(grid);
  if (!(dt > 0.0)) throw InvalidParameter("step: dt must be > 0");
  const long n = grid.n_cells;
  if (static_cast<long>(field.size()) != n)
    throw InvalidParameter("step: field size does not match the grid");
  const double dx = grid.dx();

  const std::vector<double> speed = cell_wave_speeds(sys, field);
  double s_max = 0.0;
  for (double v : speed) s_max = std::max(s_max, v);
  if (dt * s_max > dx * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << fmt17(dt) << " exceeds the stable bound "
       << fmt17(dx / s_max) << " (max wave speed " << fmt17(s_max) << ")";
    throw CflViolation(os.str());
  }

  auto speed_of = [&](long i) {
    if (i >= 0 && i < n) return speed[static_cast<std::size_t>(i)];
    if (bc == Boundary::periodic) return speed[static_cast<std::size_t>((i + n) % n)];
    return speed[static_cast<std::size_t>(i < 0 ? 0 : n - 1)];
  };

  // Edge k sits between cells k-1 and k.
  std::vector<Vec2> edge(static_cast<std::size_t>(n) + 1);
  parallel_for(n + 1, [&](long begin, long end) {
    for (long k = begin; k < end; ++k) {
      const State wl = ghost(field, k - 1, bc);
      const State wr = ghost(field, k, bc);
      const Vec2 fl = sys.flux(wl);
      const Vec2 fr = sys.flux(wr);
      const double s = std::max(speed_of(k - 1), speed_of(k));
      edge[static_cast<std::size_t>(k)] =
          Vec2{0.5 * (fl.x + fr.x) - 0.5 * s * (wr.rho - wl.rho),
               0.5 * (fl.y + fr.y) - 0.5 * s * (wr.J - wl.J)};
    }
  });

  const double lam = dt / dx;
  Field next(field.size());
  parallel_for(n, [&](long begin, long end) {
    for (long i = begin; i < end; ++i) {
      const std::size_t u = static_cast<std::size_t>(i);
      next[u] = State{field[u].rho - lam * (edge[u + 1].x - edge[u].x),
                      field[u].J - lam * (edge[u + 1].y - edge[u].y)};
    }
  });

  for (long i = 0; i < n; ++i) {
    if (!sys.in_validity(next[static_cast<std::size_t>(i)])) {
      std::ostringstream os;
      os << "state left the validity domain at cell " << i << " (x="
         << fmt17(grid.x_center(i)) << ", t=" << fmt17(t + dt)
         << "): rho=" << fmt17(next[static_cast<std::size_t>(i)].rho)
         << " J=" << fmt17(next[static_cast<std::size_t>(i)].J)
         << "; validity: " << sys.validity_description();
      throw StateLeftDomain(os.str());
    }
  }
  field = std::move(next);
}

SimResult run(const CovariantSystem& sys, const Grid1D& grid, const InitialCondition& init,
              const SimConfig& cfg) {
  validate(grid);
  validate(cfg);
  const long n = grid.n_cells;
  const double dx = grid.dx();

  Field field(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    field[static_cast<std::size_t>(i)] = init(grid.x_center(i));
  for (long i = 0; i < n; ++i) {
    const State& w = field[static_cast<std::size_t>(i)];
    if (!sys.in_validity(w)) {
      std::ostringstream os;
      os << "initial data outside the validity domain at cell " << i << " (x="
         << fmt17(grid.x_center(i)) << "): rho=" << fmt17(w.rho) << " J=" << fmt17(w.J)
         << "; validity: " << sys.validity_description();
      throw OutsideValidity(os.str());
    }
  }

  // Serial reductions keep results independent of COVHYP_THREADS.
  std::vector<double> eta(static_cast<std::size_t>(n), 0.0);
  auto fill_entropy = [&](const Field& f) {
    parallel_for(n, [&](long begin, long end) {
      for (long i = begin; i < end; ++i)
        eta[static_cast<std::size_t>(i)] = sys.entropy(f[static_cast<std::size_t>(i)]);
    });
  };
  auto totals = [&](const Field& f, StepRecord& r) {
    double sr = 0.0, sj = 0.0, se = 0.0;
    for (long i = 0; i < n; ++i) {
      sr += f[static_cast<std::size_t>(i)].rho;
      sj += f[static_cast<std::size_t>(i)].J;
      se += eta[static_cast<std::size_t>(i)];
    }
    r.total_rho = sr * dx;
    r.total_J = sj * dx;
    r.total_entropy = se * dx;
  };

  SimResult result;
  fill_entropy(field);
  StepRecord rec;
  totals(field, rec);
  result.records.push_back(rec);
  result.snapshots.push_back(Snapshot{0, 0.0, field});

  double t = 0.0;
  long k = 0;
  while (t < cfg.t_end) {
    if (k >= cfg.max_steps) {
      result.reached_t_end = false;
      break;
    }
    const double s_max = max_wave_speed(sys, field);
    double dt = s_max > 0.0 ? cfg.cfl * dx / s_max : cfg.t_end - t;
    const bool final_step = dt >= cfg.t_end - t;
    dt = std::min(dt, cfg.t_end - t);
    if (!(dt > 0.0)) break;

    const double eta_before = result.records.back().total_entropy;
    double edge_term = 0.0;
    if (cfg.boundary == Boundary::outflow) {
      const State& wl = field.front();
      const State& wr = field.back();
      edge_term = sys.entropy(wr) * sys.velocity(wr) - sys.entropy(wl) * sys.velocity(wl);
    }

    step(sys, grid, cfg.boundary, dt, t, field);
    // Land on t_end exactly instead of accumulating a last sliver of rounding.
    t = final_step ? cfg.t_end : t + dt;
    ++k;

    fill_entropy(field);
    StepRecord r;
    r.step = k;
    r.t = t;
    r.dt = dt;
    totals(field, r);
    r.budget = (r.total_entropy - eta_before) / dt + edge_term;
    result.records.push_back(r);
    if (cfg.snapshot_stride > 0 && k % cfg.snapshot_stride == 0)
      result.snapshots.push_back(Snapshot{k, t, field});
  }

  if (result.snapshots.back().step != k)
    result.snapshots.push_back(Snapshot{k, t, field});
  result.field = std::move(field);
  return result;
}

void write_snapshot_csv(const std::string& path, const CovariantSystem& sys,
                        const Grid1D& grid, const Field& field, double t) {
  validate(grid);
  std::ofstream out = open_csv(path);
  out << "t,x,rho,J,eta,u\n";
  for (long i = 0; i < static_cast<long>(field.size()); ++i) {
    const State& w = field[static_cast<std::size_t>(i)];
    out << fmt17(t) << ',' << fmt17(grid.x_center(i)) << ',' << fmt17(w.rho) << ','
        << fmt17(w.J) << ',' << fmt17(sys.entropy(w)) << ',' << fmt17(sys.velocity(w))
        << '\n';
  }
}

void write_series_csv(const std::string& path, const std::vector<Snapshot>& snaps,
                      const std::vector<std::string>& files) {
  if (snaps.size() != files.size())
    throw InvalidParameter("write_series_csv: one file name per snapshot required");
  std::ofstream out = open_csv(path);
  out << "step,t,file\n";
  for (std::size_t i = 0; i < snaps.size(); ++i)
    out << snaps[i].step << ',' << fmt17(snaps[i].t) << ',' << files[i] << '\n';
}

void write_entropy_budget_csv(const std::string& path, const std::vector<StepRecord>& records) {
  std::ofstream out = open_csv(path);
  out << "t,total_entropy,D\n";
  for (const StepRecord& r : records)
    out << fmt17(r.t) << ',' << fmt17(r.total_entropy) << ',' << fmt17(r.budget) << '\n';
}

}  // namespace covhyp
