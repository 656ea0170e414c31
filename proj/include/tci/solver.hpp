#ifndef TCI_SOLVER_HPP
#define TCI_SOLVER_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tci/boundary.hpp"
#include "tci/cases.hpp"
#include "tci/field.hpp"
#include "tci/indicator.hpp"
#include "tci/reconstruction.hpp"

namespace tci {

enum class RunMode { steady, unsteady };

/// Which cells are limited in restricted mode.
enum class MaskSource {
  indicator,       ///< troubled-cell indicator with threshold K
  shock_straddle,  ///< the two cells either side of the exact shock on every row
};

inline constexpr double kSteadyCfl = 0.15;
inline constexpr double kUnsteadyCfl = 0.4;

struct RunConfig {
  RunMode mode = RunMode::steady;
  LimitingMode limiting = LimitingMode::everywhere;
  MaskSource mask_source = MaskSource::indicator;
  std::optional<double> k_threshold;
  /// Steady runs use local time steps; unsteady runs pass their own value.
  double cfl = kSteadyCfl;
  int max_iterations = 15000;
  double convergence_tol = 1e-14;
  /// Unsteady runs; defaults to the case's final time.
  std::optional<double> final_time;
};

/// Throws ConfigError for out-of-range values or a missing K.
void validate(const RunConfig& config);

/// Semi-discrete right-hand side dQ/dt = R on interior cells.
struct Residual {
  int nx = 0;
  int ny = 0;
  std::vector<ConservedState> values;  ///< row-major over interior cells
  std::vector<double> max_face_speed;  ///< largest face wave speed around each cell
  /// Net flux leaving the domain through its boundary faces (flux . outward normal * area).
  ConservedState boundary_outflow;
  std::size_t fallback_count = 0;

  const ConservedState& operator()(int i, int j) const {
    return values[static_cast<std::size_t>(j) * nx + i];
  }
};

/// R_i = -(1/Omega_i) sum_f F_f . n_f A_f from the Lax-Friedrichs flux of the
/// reconstructed face states. Ghosts must be filled.
Residual compute_residual(const CellField& field, const GasModel& gas, LimitingMode mode,
                          const TroubledMask* mask = nullptr);

/// Scratch storage reused across iterations; `residual` holds the result.
struct ResidualWorkspace {
  GhostedArray<PrimitiveState> prims;
  FaceStates faces;
  std::vector<FluxVector> fx;
  std::vector<FluxVector> fy;
  std::vector<double> sx;
  std::vector<double> sy;
  Residual residual;
};

void compute_residual(const CellField& field, const GasModel& gas, LimitingMode mode,
                      const TroubledMask* mask, ResidualWorkspace& ws);

/// sqrt(sum_i sum_j R_ij^2 Omega_i), summed in a fixed order.
double residual_norm(std::span<const ConservedState> residual, double cell_volume);
double residual_norm(std::span<const ConservedState> residual, std::span<const double> volumes);
double residual_norm(const Residual& residual, const StructuredMesh& mesh);

struct StepReport {
  double rn = 0.0;                 ///< norm of the residual used for the update
  std::size_t fallbacks = 0;       ///< reconstruction fallbacks
  std::size_t rejections = 0;      ///< cells (steady) or steps (unsteady) retried with half the step
  std::vector<std::size_t> mask_counts;  ///< troubled cells per stage (unsteady)
  double dt = 0.0;                 ///< unsteady step actually taken
  ConservedState boundary_outflow_integral;  ///< time-integrated boundary outflow (unsteady)
};

/// One forward-Euler pseudo-time step with local time steps
/// dt_i = cfl * min(dx, dy) / max face wave speed of cell i. Fills ghosts
/// first. A cell whose update is inadmissible retries with dt_i / 2; a second
/// failure throws NumericalFailure.
StepReport advance_steady(CellField& field, const GasModel& gas, const BoundaryConditions& bcs,
                          LimitingMode mode, const TroubledMask* mask, double cfl);
StepReport advance_steady(CellField& field, const GasModel& gas, const BoundaryConditions& bcs,
                          LimitingMode mode, const TroubledMask* mask, double cfl,
                          ResidualWorkspace& ws);

/// Largest stable global step for the current interior states.
double stable_time_step(const CellField& field, const GasModel& gas, double cfl);

/// One SSP-RK2 step of size dt. In restricted mode the mask is recomputed from
/// the current field at every stage with threshold `k`. An inadmissible
/// result retries the step once with dt / 2, then throws NumericalFailure.
StepReport advance_unsteady(CellField& field, const GasModel& gas, const BoundaryConditions& bcs,
                            LimitingMode mode, std::optional<double> k, double dt);

struct ResidualHistory {
  std::vector<double> rn;
  bool converged = false;
  bool stalled = false;  ///< plateaued short of tol, including at the round-off floor
  int iterations_used = 0;
};

/// 1-based iteration at which RN first dropped to `level`, if it did.
std::optional<int> iterations_to_reach(const ResidualHistory& history, double level);

struct UnsteadyStats {
  double time = 0.0;
  ConservedState initial_total;
  ConservedState final_total;
  ConservedState boundary_outflow_integral;
  std::vector<std::size_t> mask_counts;  ///< per stage
};

/// |final - initial + outflow| per conserved component, relative to the
/// largest of the three magnitudes.
std::array<double, 4> conservation_imbalance(const UnsteadyStats& stats);

struct RunResult {
  CellField field;
  ResidualHistory history;
  std::optional<ResidualHistory> first_order_history;
  /// Mask used by the high-order run (steady) or the last stage (unsteady).
  TroubledMask mask;
  /// Indicator values the mask came from (zero when the mask is not indicator-based).
  GhostedArray<double> indicator;
  std::size_t fallbacks = 0;
  std::size_t rejections = 0;
  std::optional<UnsteadyStats> unsteady;
};

/// Steady: first-order run from the case's initial field, then a high-order
/// run from that solution with the mask fixed. Unsteady: SSP-RK2 to the final
/// time with the mask recomputed at every stage.
RunResult run(const RunConfig& config, const CaseDefinition& c, const GasModel& gas = GasModel{});

/// Converged first-order solution shared by every high-order setting.
struct FirstOrderSolution {
  CellField field;  ///< ghosts filled
  ResidualHistory history;
  GhostedArray<double> indicator;
  std::size_t fallbacks = 0;
  std::size_t rejections = 0;
};

FirstOrderSolution solve_first_order(const RunConfig& config, const CaseDefinition& c,
                                     const GasModel& gas = GasModel{});

/// Mask for the high-order stage of a steady run.
TroubledMask steady_mask(const RunConfig& config, const CaseDefinition& c,
                         const FirstOrderSolution& first);

/// High-order steady run from `first` with the mask fixed. For first_order
/// limiting the first-order solution is returned unchanged.
RunResult continue_high_order(const FirstOrderSolution& first, const RunConfig& config,
                              const CaseDefinition& c, const GasModel& gas = GasModel{});

/// Steady march to tolerance or max_iterations.
ResidualHistory march_steady(CellField& field, const GasModel& gas, const BoundaryConditions& bcs,
                             LimitingMode mode, const TroubledMask* mask, const RunConfig& config,
                             std::size_t* fallbacks = nullptr, std::size_t* rejections = nullptr);

}  // namespace tci

#endif  // TCI_SOLVER_HPP
