#include "tci/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tci {

void validate(const RunConfig& config) {
  std::ostringstream msg;
  if (!(config.cfl > 0.0 && config.cfl <= 1.0)) {
    msg << "cfl must lie in (0, 1], got " << config.cfl;
  } else if (config.max_iterations < 1) {
    msg << "max_iterations must be >= 1, got " << config.max_iterations;
  } else if (!(config.convergence_tol > 0.0)) {
    msg << "convergence tolerance must be positive, got " << config.convergence_tol;
  } else if (config.limiting == LimitingMode::restricted &&
             config.mask_source == MaskSource::indicator && !config.k_threshold) {
    msg << "restricted limiting needs the threshold key 'k'";
  } else if (config.k_threshold && !(*config.k_threshold > 0.0)) {
    msg << "threshold k must be positive, got " << *config.k_threshold;
  } else if (config.final_time && !(*config.final_time > 0.0)) {
    msg << "final_time must be positive, got " << *config.final_time;
  } else if (config.mode == RunMode::unsteady && config.mask_source == MaskSource::shock_straddle &&
             config.limiting == LimitingMode::restricted) {
    msg << "the shock-straddle mask is only defined for steady runs";
  }
  if (!msg.str().empty()) throw ConfigError(msg.str());
}

Residual compute_residual(const CellField& field, const GasModel& gas, LimitingMode mode,
                          const TroubledMask* mask) {
  ResidualWorkspace ws;
  compute_residual(field, gas, mode, mask, ws);
  return std::move(ws.residual);
}

void compute_residual(const CellField& field, const GasModel& gas, LimitingMode mode,
                      const TroubledMask* mask, ResidualWorkspace& ws) {
  const StructuredMesh& mesh = field.mesh;
  const int nx = mesh.nx();
  const int ny = mesh.ny();
  const double gamma = gas.gamma();
  primitive_field(field, gas, ws.prims);
  reconstruct_all_faces(ws.prims, mode, mask, ws.faces);
  const FaceStates& faces = ws.faces;

  std::vector<FluxVector>& fx = ws.fx;
  std::vector<double>& sx = ws.sx;
  fx.resize(faces.x_faces.size());
  sx.resize(faces.x_faces.size());
  for (std::size_t k = 0; k < fx.size(); ++k) {
    const FacePair& f = faces.x_faces[k];
    fx[k] = lax_friedrichs_flux(f.left, f.right, Normal{1.0, 0.0}, gamma, &sx[k]);
  }
  std::vector<FluxVector>& fy = ws.fy;
  std::vector<double>& sy = ws.sy;
  fy.resize(faces.y_faces.size());
  sy.resize(faces.y_faces.size());
  for (std::size_t k = 0; k < fy.size(); ++k) {
    const FacePair& f = faces.y_faces[k];
    fy[k] = lax_friedrichs_flux(f.left, f.right, Normal{0.0, 1.0}, gamma, &sy[k]);
  }

  Residual& r = ws.residual;
  r.nx = nx;
  r.ny = ny;
  r.fallback_count = faces.fallback_count;
  r.values.resize(mesh.interior_count());
  r.max_face_speed.resize(mesh.interior_count());
  const double ax = mesh.x_face_area();
  const double ay = mesh.y_face_area();
  const double inv_volume = 1.0 / mesh.cell_volume();
  auto xk = [nx](int i, int j) { return static_cast<std::size_t>(j) * (nx + 1) + i; };
  auto yk = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      FluxVector net = ax * (fx[xk(i + 1, j)] - fx[xk(i, j)]);
      net += ay * (fy[yk(i, j + 1)] - fy[yk(i, j)]);
      const std::size_t c = yk(i, j);
      r.values[c] = -inv_volume * net;
      r.max_face_speed[c] =
          std::max({sx[xk(i, j)], sx[xk(i + 1, j)], sy[yk(i, j)], sy[yk(i, j + 1)]});
    }
  }

  ConservedState out;
  for (int j = 0; j < ny; ++j) out += ax * (fx[xk(nx, j)] - fx[xk(0, j)]);
  for (int i = 0; i < nx; ++i) out += ay * (fy[yk(i, ny)] - fy[yk(i, 0)]);
  r.boundary_outflow = out;
}

double residual_norm(std::span<const ConservedState> residual, double cell_volume) {
  double sum = 0.0;
  for (const ConservedState& q : residual) {
    sum += (q.rho * q.rho + q.mom_x * q.mom_x + q.mom_y * q.mom_y + q.energy * q.energy) *
           cell_volume;
  }
  return std::sqrt(sum);
}

double residual_norm(std::span<const ConservedState> residual, std::span<const double> volumes) {
  if (volumes.size() != residual.size()) throw Error("residual norm: volume count mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < residual.size(); ++k) {
    const ConservedState& q = residual[k];
    sum += (q.rho * q.rho + q.mom_x * q.mom_x + q.mom_y * q.mom_y + q.energy * q.energy) *
           volumes[k];
  }
  return std::sqrt(sum);
}

double residual_norm(const Residual& residual, const StructuredMesh& mesh) {
  return residual_norm(residual.values, mesh.cell_volume());
}

namespace {

[[noreturn]] void fail_update(const CellField& field, int i, int j, const ConservedState& q,
                              const GasModel& gas) {
  std::ostringstream msg;
  msg << "inadmissible update at iteration " << field.iteration << ", cell (" << i << ", " << j
      << "): rho=" << q.rho << " p=" << pressure_of(q, gas.gamma())
      << " after halving the time step";
  throw NumericalFailure(msg.str());
}

}  // namespace

StepReport advance_steady(CellField& field, const GasModel& gas, const BoundaryConditions& bcs,
                          LimitingMode mode, const TroubledMask* mask, double cfl) {
  ResidualWorkspace ws;
  return advance_steady(field, gas, bcs, mode, mask, cfl, ws);
}

StepReport advance_steady(CellField& field, const GasModel& gas, const BoundaryConditions& bcs,
                          LimitingMode mode, const TroubledMask* mask, double cfl,
                          ResidualWorkspace& ws) {
  apply_boundary_conditions(field, bcs, gas);
  compute_residual(field, gas, mode, mask, ws);
  const Residual& r = ws.residual;
  StepReport report;
  report.rn = residual_norm(r, field.mesh);
  report.fallbacks = r.fallback_count;

  const double h = std::min(field.mesh.dx(), field.mesh.dy());
  for (int j = 0; j < r.ny; ++j) {
    for (int i = 0; i < r.nx; ++i) {
      const std::size_t c = static_cast<std::size_t>(j) * r.nx + i;
      const double dt = cfl * h / r.max_face_speed[c];
      ConservedState& q = field.states(i, j);
      ConservedState next = q + dt * r.values[c];
      if (!is_admissible(next, gas)) {
        ++report.rejections;
        next = q + (0.5 * dt) * r.values[c];
        if (!is_admissible(next, gas)) fail_update(field, i, j, next, gas);
      }
      q = next;
    }
  }
  ++field.iteration;
  return report;
}

double stable_time_step(const CellField& field, const GasModel& gas, double cfl) {
  const StructuredMesh& mesh = field.mesh;
  double fastest = 0.0;
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const ConservedState& q = field.states(i, j);
      fastest = std::max({fastest, max_wave_speed(q, {1.0, 0.0}, gas),
                          max_wave_speed(q, {0.0, 1.0}, gas)});
    }
  }
  return cfl * std::min(mesh.dx(), mesh.dy()) / fastest;
}

namespace {

struct StageOutput {
  Residual residual;
  std::size_t mask_count = 0;
};

StageOutput evaluate_stage(CellField& stage, const GasModel& gas, const BoundaryConditions& bcs,
                           LimitingMode mode, std::optional<double> k) {
  apply_boundary_conditions(stage, bcs, gas);
  if (mode == LimitingMode::restricted) {
    const TroubledMask mask = flag_troubled_cells(stage, IndicatorConfig{k.value()});
    return {compute_residual(stage, gas, mode, &mask), mask.count()};
  }
  return {compute_residual(stage, gas, mode, nullptr), 0};
}

bool all_admissible(const CellField& f, const GasModel& gas) {
  for (int j = 0; j < f.mesh.ny(); ++j) {
    for (int i = 0; i < f.mesh.nx(); ++i) {
      if (!is_admissible(f.states(i, j), gas)) return false;
    }
  }
  return true;
}

std::optional<CellField> try_rk2(const CellField& field, const GasModel& gas,
                                 const BoundaryConditions& bcs, LimitingMode mode,
                                 std::optional<double> k, double dt, StepReport& report) {
  CellField start = field;
  const StageOutput s0 = evaluate_stage(start, gas, bcs, mode, k);
  report.rn = residual_norm(s0.residual, field.mesh);
  report.fallbacks = s0.residual.fallback_count;
  report.mask_counts = {s0.mask_count};

  const int nx = field.mesh.nx();
  CellField stage = start;
  for (int j = 0; j < field.mesh.ny(); ++j) {
    for (int i = 0; i < nx; ++i) {
      stage.states(i, j) += dt * s0.residual.values[static_cast<std::size_t>(j) * nx + i];
    }
  }
  if (!all_admissible(stage, gas)) return std::nullopt;

  const StageOutput s1 = evaluate_stage(stage, gas, bcs, mode, k);
  report.fallbacks += s1.residual.fallback_count;
  report.mask_counts.push_back(s1.mask_count);

  CellField next = start;
  for (int j = 0; j < field.mesh.ny(); ++j) {
    for (int i = 0; i < nx; ++i) {
      const ConservedState& r1 = s1.residual.values[static_cast<std::size_t>(j) * nx + i];
      next.states(i, j) = 0.5 * start.states(i, j) + 0.5 * (stage.states(i, j) + dt * r1);
    }
  }
  if (!all_admissible(next, gas)) return std::nullopt;
  report.boundary_outflow_integral =
      (0.5 * dt) * (s0.residual.boundary_outflow + s1.residual.boundary_outflow);
  report.dt = dt;
  return next;
}

}  // namespace

StepReport advance_unsteady(CellField& field, const GasModel& gas, const BoundaryConditions& bcs,
                            LimitingMode mode, std::optional<double> k, double dt) {
  if (mode == LimitingMode::restricted && !k) {
    throw ConfigError("unsteady restricted limiting needs a threshold K");
  }
  StepReport report;
  std::optional<CellField> next = try_rk2(field, gas, bcs, mode, k, dt, report);
  if (!next) {
    report.rejections = 1;
    next = try_rk2(field, gas, bcs, mode, k, 0.5 * dt, report);
    if (!next) {
      std::ostringstream msg;
      msg << "inadmissible state in RK2 step at iteration " << field.iteration
          << " even with dt=" << 0.5 * dt;
      throw NumericalFailure(msg.str());
    }
  }
  const long iteration = field.iteration;
  field = std::move(*next);
  field.iteration = iteration + 1;
  return report;
}

std::optional<int> iterations_to_reach(const ResidualHistory& history, double level) {
  for (std::size_t k = 0; k < history.rn.size(); ++k) {
    if (history.rn[k] <= level) return static_cast<int>(k + 1);
  }
  return std::nullopt;
}

namespace {

// Stalled: not converged, and the final quarter of the history gained less
// than one decade over the best value before it. A plateau at the round-off
// floor counts.
bool looks_stalled(const ResidualHistory& h) {
  if (h.converged || h.rn.size() < 8) return false;
  const std::size_t split = h.rn.size() - h.rn.size() / 4;
  const double before = *std::min_element(h.rn.begin(), h.rn.begin() + static_cast<long>(split));
  const double after = *std::min_element(h.rn.begin() + static_cast<long>(split), h.rn.end());
  return after > 0.1 * before;
}

}  // namespace

ResidualHistory march_steady(CellField& field, const GasModel& gas, const BoundaryConditions& bcs,
                             LimitingMode mode, const TroubledMask* mask, const RunConfig& config,
                             std::size_t* fallbacks, std::size_t* rejections) {
  ResidualHistory history;
  history.rn.reserve(static_cast<std::size_t>(config.max_iterations));
  ResidualWorkspace ws;
  for (int it = 0; it < config.max_iterations; ++it) {
    const StepReport step = advance_steady(field, gas, bcs, mode, mask, config.cfl, ws);
    history.rn.push_back(step.rn);
    if (fallbacks != nullptr) *fallbacks += step.fallbacks;
    if (rejections != nullptr) *rejections += step.rejections;
    if (!std::isfinite(step.rn)) {
      std::ostringstream msg;
      msg << "residual norm is not finite at iteration " << field.iteration;
      throw NumericalFailure(msg.str());
    }
    if (step.rn <= config.convergence_tol) {
      history.converged = true;
      break;
    }
  }
  history.iterations_used = static_cast<int>(history.rn.size());
  history.stalled = looks_stalled(history);
  return history;
}

std::array<double, 4> conservation_imbalance(const UnsteadyStats& stats) {
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    const double balance =
        stats.final_total[k] - stats.initial_total[k] + stats.boundary_outflow_integral[k];
    const double scale = std::max({std::abs(stats.initial_total[k]), std::abs(stats.final_total[k]),
                                   std::abs(stats.boundary_outflow_integral[k]),
                                   std::numeric_limits<double>::min()});
    out[static_cast<std::size_t>(k)] = std::abs(balance) / scale;
  }
  return out;
}

FirstOrderSolution solve_first_order(const RunConfig& config, const CaseDefinition& c,
                                     const GasModel& gas) {
  CellField field = initial_field(c, gas);
  std::size_t fallbacks = 0;
  std::size_t rejections = 0;
  ResidualHistory history = march_steady(field, gas, c.bcs, LimitingMode::first_order, nullptr,
                                         config, &fallbacks, &rejections);
  apply_boundary_conditions(field, c.bcs, gas);
  GhostedArray<double> indicator = indicator_values(field);
  return FirstOrderSolution{std::move(field), std::move(history), std::move(indicator), fallbacks,
                            rejections};
}

TroubledMask steady_mask(const RunConfig& config, const CaseDefinition& c,
                         const FirstOrderSolution& first) {
  const StructuredMesh& mesh = first.field.mesh;
  switch (config.limiting) {
    case LimitingMode::first_order:
      if (config.k_threshold) return flag_troubled_cells(first.indicator, {*config.k_threshold});
      return TroubledMask::none(mesh);
    case LimitingMode::everywhere:
      return TroubledMask::all(mesh);
    case LimitingMode::restricted:
      return config.mask_source == MaskSource::indicator
                 ? flag_troubled_cells(first.indicator, {*config.k_threshold})
                 : shock_straddle_mask(mesh, c);
  }
  return TroubledMask::none(mesh);
}

RunResult continue_high_order(const FirstOrderSolution& first, const RunConfig& config,
                              const CaseDefinition& c, const GasModel& gas) {
  validate(config);
  TroubledMask mask = steady_mask(config, c, first);
  RunResult result{first.field, first.history, first.history, std::move(mask), first.indicator,
                   first.fallbacks, first.rejections, std::nullopt};
  if (config.limiting == LimitingMode::first_order) return result;

  result.field.iteration = 0;
  result.history = march_steady(result.field, gas, c.bcs, config.limiting,
                                config.limiting == LimitingMode::restricted ? &result.mask : nullptr,
                                config, &result.fallbacks, &result.rejections);
  return result;
}

namespace {

RunResult run_unsteady(const RunConfig& config, const CaseDefinition& c, const GasModel& gas) {
  const double final_time = config.final_time.value_or(c.final_time);
  if (!(final_time > 0.0)) throw ConfigError("unsteady run of '" + c.name + "' needs a final_time");

  CellField field = initial_field(c, gas);
  UnsteadyStats stats;
  stats.initial_total = total_conserved(field);
  ResidualHistory history;
  std::size_t fallbacks = 0;
  std::size_t rejections = 0;

  double t = 0.0;
  while (t < final_time * (1.0 - 1e-14) && history.iterations_used < config.max_iterations) {
    double dt = stable_time_step(field, gas, config.cfl);
    if (t + dt > final_time) dt = final_time - t;
    const StepReport step = advance_unsteady(field, gas, c.bcs, config.limiting,
                                             config.k_threshold, dt);
    t += step.dt;
    history.rn.push_back(step.rn);
    ++history.iterations_used;
    fallbacks += step.fallbacks;
    rejections += step.rejections;
    stats.boundary_outflow_integral += step.boundary_outflow_integral;
    stats.mask_counts.insert(stats.mask_counts.end(), step.mask_counts.begin(),
                             step.mask_counts.end());
  }
  history.converged = t >= final_time * (1.0 - 1e-14);
  stats.time = t;
  stats.final_total = total_conserved(field);

  apply_boundary_conditions(field, c.bcs, gas);
  GhostedArray<double> indicator = indicator_values(field);
  TroubledMask mask = TroubledMask::none(field.mesh);
  if (config.limiting == LimitingMode::everywhere) {
    mask = TroubledMask::all(field.mesh);
  } else if (config.k_threshold) {
    mask = flag_troubled_cells(indicator, {*config.k_threshold});
  }

  return RunResult{std::move(field), std::move(history), std::nullopt, std::move(mask),
                   std::move(indicator), fallbacks, rejections, stats};
}

}  // namespace

RunResult run(const RunConfig& config, const CaseDefinition& c, const GasModel& gas) {
  validate(config);
  if ((config.mode == RunMode::steady) != c.steady) {
    throw ConfigError("case '" + c.name + "' is " + (c.steady ? "steady" : "unsteady") +
                      " but the run mode says otherwise");
  }
  if (config.mode == RunMode::unsteady) return run_unsteady(config, c, gas);
  return continue_high_order(solve_first_order(config, c, gas), config, c, gas);
}

}  // namespace tci
