#ifndef TCI_BOUNDARY_HPP
#define TCI_BOUNDARY_HPP

#include <array>
#include <functional>
#include <string>
#include <string_view>

#include "tci/field.hpp"

namespace tci {

enum class BoundaryKind {
  supersonic_inflow,   ///< ghosts hold a fixed inflow state
  supersonic_outflow,  ///< ghosts copy the adjacent interior cell
  exact_dirichlet,     ///< ghosts hold the exact solution at their centres
  slip_wall,           ///< mirror image with the wall-normal velocity reversed
};

enum class Side { west = 0, east = 1, south = 2, north = 3 };

/// Pointwise evaluator of a primitive state, e.g. an exact solution.
using PointEvaluator = std::function<PrimitiveState(double x, double y)>;

struct BoundaryConditions {
  std::array<BoundaryKind, 4> kinds{BoundaryKind::supersonic_outflow, BoundaryKind::supersonic_outflow,
                                    BoundaryKind::supersonic_outflow, BoundaryKind::supersonic_outflow};
  /// State used by supersonic_inflow sides.
  PrimitiveState inflow{};
  /// Required when any side is exact_dirichlet.
  PointEvaluator exact;

  BoundaryKind operator[](Side s) const { return kinds[static_cast<std::size_t>(s)]; }
};

std::string_view to_string(BoundaryKind kind);
std::string_view to_string(Side side);

/// Throws ConfigError for an unrecognised name.
BoundaryKind parse_boundary_kind(std::string_view name);

/// Fills every ghost layer of `field` from its interior. West/east ghosts are
/// filled first, then south/north across the full ghosted width, so corner
/// ghosts follow the south/north rule.
void apply_boundary_conditions(CellField& field, const BoundaryConditions& bcs,
                               const GasModel& gas);

}  // namespace tci

#endif  // TCI_BOUNDARY_HPP
