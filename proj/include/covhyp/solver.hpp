// First-order finite-volume scheme for  dW/dt + df(W)/dx = 0  on a uniform
// 1D grid, with the local-maximum-speed (Rusanov) two-point flux
//
//   F(wl, wr) = (f(wl) + f(wr))/2 - s (wr - wl)/2,
//   s = max(spectral_radius(df(wl)), spectral_radius(df(wr))).
//
// Each step also reports an entropy budget
//
//   D = [sum eta dx](after) - [sum eta dx](before)) / dt + zeta_R - zeta_L,
//
// with zeta = eta u evaluated at the boundary cells of the before field
// (zero boundary term for periodic runs). The scheme dissipates entropy, so
// D stays nonpositive up to rounding.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "covhyp/construction.hpp"

namespace covhyp {

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  long n_cells = 100;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_cells); }
  double x_center(long i) const { return x_min + (static_cast<double>(i) + 0.5) * dx(); }
};

/// Throws InvalidParameter unless x_min < x_max and n_cells >= 2.
void validate(const Grid1D& grid);

enum class Boundary { outflow, periodic };

using Field = std::vector<State>;
using InitialCondition = std::function<State(double)>;

/// left for x < x_split, right for x >= x_split.
InitialCondition riemann_init(const State& left, const State& right, double x_split);

/// base plus a Gaussian perturbation of rho: amplitude exp(-((x-center)/width)^2).
InitialCondition gaussian_bump(const State& base, double rho_amplitude, double center,
                               double width);

struct SimConfig {
  double cfl = 0.45;          // in (0, 1]
  double t_end = 0.0;         // >= 0; 0 means initial snapshot only
  long max_steps = 100000;    // hard cap; run stops early when reached
  long snapshot_stride = 0;   // 0: initial and final snapshots only
  Boundary boundary = Boundary::outflow;
};

void validate(const SimConfig& cfg);

struct StepRecord {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double total_rho = 0.0;      // sum rho dx
  double total_J = 0.0;        // sum J dx
  double total_entropy = 0.0;  // sum eta dx
  double budget = 0.0;         // entropy budget D of the step that ended at t
};

struct Snapshot {
  long step = 0;
  double t = 0.0;
  Field field;
};

struct SimResult {
  Field field;
  std::vector<StepRecord> records;    // records[0] describes the initial data
  std::vector<Snapshot> snapshots;
  bool reached_t_end = true;          // false when max_steps stopped the run
};

/// Two-point flux; exactly f(w) when both arguments are the same state.
/// Throws DomainError when the local wave speed degenerates to zero (cannot
/// happen for a strictly hyperbolic system).
Vec2 numerical_flux(const CovariantSystem& sys, const State& wl, const State& wr);

/// Largest spectral radius of df/dW over the field.
double max_wave_speed(const CovariantSystem& sys, const Field& field);

/// One forward-Euler update in place. Throws CflViolation when
/// dt exceeds dx / s_max, StateLeftDomain when an updated cell leaves the
/// validity domain (t names the end time of the step in the message).
void step(const CovariantSystem& sys, const Grid1D& grid, Boundary bc, double dt,
          double t, Field& field);

/// Time loop with dt = cfl dx / s_max, clipped to land on t_end exactly.
/// Throws OutsideValidity if the initial data is inadmissible.
SimResult run(const CovariantSystem& sys, const Grid1D& grid, const InitialCondition& init,
              const SimConfig& cfg);

/// Columns t,x,rho,J,eta,u with one row per cell, full double precision.
void write_snapshot_csv(const std::string& path, const CovariantSystem& sys,
                        const Grid1D& grid, const Field& field, double t);

/// Snapshot index: columns step,t,file. files[i] names the csv of snaps[i].
void write_series_csv(const std::string& path, const std::vector<Snapshot>& snaps,
                      const std::vector<std::string>& files);

/// Columns t,total_entropy,D with one row per step record.
void write_entropy_budget_csv(const std::string& path, const std::vector<StepRecord>& records);

}  // namespace covhyp
