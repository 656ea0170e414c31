#ifndef TCI_CASES_HPP
#define TCI_CASES_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tci/boundary.hpp"
#include "tci/diagnostics.hpp"
#include "tci/field.hpp"
#include "tci/indicator.hpp"

namespace tci {

/// Exact two-state oblique shock.
///
/// States are given in the flow frame: the incoming flow runs along +x and
/// the shock line is turned clockwise from it by beta, so the post-shock flow
/// is turned clockwise by theta. Angles are in degrees; the pre-shock state
/// has rho = 1 and p = 1.
struct ObliqueShockSolution {
  double m1 = 0.0;
  double beta = 0.0;
  double gamma = 1.4;
  PrimitiveState pre;
  PrimitiveState post;
  double theta = 0.0;

  double density_ratio() const { return post.rho / pre.rho; }
  double pressure_ratio() const { return post.p / pre.p; }
};

/// Throws RangeError unless m1 >= 1 and asin(1/m1) <= beta <= 90 degrees.
ObliqueShockSolution oblique_shock_exact(double m1, double beta_deg, const GasModel& gas);

/// Relative imbalance of the four jump conditions (mass, normal momentum,
/// tangential velocity, total enthalpy) across the shock.
std::array<double, 4> rankine_hugoniot_residuals(const ObliqueShockSolution& s);

/// Straight shock line through a point; `downstream` is the unit normal
/// pointing into the post-shock side.
struct ShockGeometry {
  double x = 0.0;
  double y = 0.0;
  double angle_deg = 0.0;  ///< direction of the line, from +x
  Normal downstream{};

  bool is_downstream(double px, double py) const {
    return (px - x) * downstream.x + (py - y) * downstream.y > 0.0;
  }
  /// x where the line crosses height y. Throws RangeError for a horizontal line.
  double crossing_x(double at_y) const;
};

struct CaseDefinition {
  std::string name;
  std::string summary;
  Bounds bounds;
  int nx = 100;
  int ny = 100;
  bool steady = true;
  double final_time = 0.0;  ///< unsteady cases only
  PointEvaluator initial;
  BoundaryConditions bcs;
  std::optional<PointEvaluator> exact;
  double sample_y = 0.5;
  std::optional<ShockGeometry> shock;
  std::optional<ObliqueShockSolution> oblique;
  /// Flow direction of the incoming stream, degrees from +x.
  double inflow_angle_deg = 0.0;

  StructuredMesh mesh() const { return build_mesh(nx, ny, bounds); }
};

inline constexpr double kOncomingMach = 3.0;
inline constexpr double kAlignedBeta = 40.0;
inline constexpr double kNonalignedInflowAngle = 10.0;

/// M = 3, beta = 40 deg, incoming flow along +x on [0,1]^2. The shock enters
/// through the top boundary at x = 0.1 and leaves through the right boundary.
CaseDefinition aligned_oblique_shock_case(int nx = 100, int ny = 100);

/// M = 3 with the incoming flow turned 10 deg anticlockwise from +x and the
/// shock at angle beta to that flow, crossing (0.5, 0.5).
CaseDefinition nonaligned_oblique_shock_case(int nx = 100, int ny = 100, double beta_deg = 30.0);

/// Four-quadrant 2D Riemann problem (four interacting shocks), outflow on all
/// sides.
CaseDefinition riemann2d_case(int nx = 100, int ny = 100);

struct QuadrantStates {
  PrimitiveState upper_right;
  PrimitiveState upper_left;
  PrimitiveState lower_left;
  PrimitiveState lower_right;
};
QuadrantStates riemann2d_states();

struct CaseInfo {
  std::string name;
  std::string summary;
};

/// Every built-in case, in a fixed order.
std::vector<CaseInfo> case_registry();

/// Builds a registered case by name. `beta_deg` only applies to
/// nonaligned_oblique_shock. Throws ConfigError for an unknown name and
/// InvalidDimension for a bad grid.
CaseDefinition make_case(const std::string& name, int nx, int ny,
                         std::optional<double> beta_deg = std::nullopt);

/// Cell-centre initial field (ghosts left at zero).
CellField initial_field(const CaseDefinition& c, const GasModel& gas);

/// Density along the case's sampling row against the exact solution.
/// Requires an exact solution and a shock geometry.
LineProfile line_profile(const CellField& field, const CaseDefinition& c);

/// Exactly two cells per row: the last cell centre before the shock crossing
/// and the first one after it. Rows the shock does not cross stay unflagged.
TroubledMask shock_straddle_mask(const StructuredMesh& mesh, const CaseDefinition& c);

/// Number of flagged cells whose centres lie upstream / downstream of the exact shock.
struct SideCounts {
  std::size_t pre = 0;
  std::size_t post = 0;
};
SideCounts count_by_shock_side(const TroubledMask& mask, const StructuredMesh& mesh,
                               const ShockGeometry& shock);

}  // namespace tci

#endif  // TCI_CASES_HPP
