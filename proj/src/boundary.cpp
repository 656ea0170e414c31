#include "tci/boundary.hpp"

#include <string>

namespace tci {

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::supersonic_inflow: return "supersonic_inflow";
    case BoundaryKind::supersonic_outflow: return "supersonic_outflow";
    case BoundaryKind::exact_dirichlet: return "exact_dirichlet";
    case BoundaryKind::slip_wall: return "slip_wall";
  }
  return "unknown";
}

std::string_view to_string(Side side) {
  switch (side) {
    case Side::west: return "west";
    case Side::east: return "east";
    case Side::south: return "south";
    case Side::north: return "north";
  }
  return "unknown";
}

BoundaryKind parse_boundary_kind(std::string_view name) {
  for (auto kind : {BoundaryKind::supersonic_inflow, BoundaryKind::supersonic_outflow,
                    BoundaryKind::exact_dirichlet, BoundaryKind::slip_wall}) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError("unknown boundary condition kind '" + std::string(name) + "'");
}

namespace {

// Ghost layer k (1-based distance from the boundary) of one side, addressed
// through a small accessor so that all four sides share the fill logic.
struct SideAccess {
  CellField& field;
  Side side;

  int extent() const {
    const auto& m = field.mesh;
    const int g = m.ghost_width();
    return (side == Side::west || side == Side::east) ? m.ny() : m.nx() + 2 * g;
  }
  int first() const {
    return (side == Side::west || side == Side::east) ? 0 : -field.mesh.ghost_width();
  }
  /// Cell at signed depth d along the inward direction; d = 0 is the first
  /// interior cell, d = -k the k-th ghost.
  CellIndex at(int t, int d) const {
    const auto& m = field.mesh;
    switch (side) {
      case Side::west: return {d, t};
      case Side::east: return {m.nx() - 1 - d, t};
      case Side::south: return {t, d};
      case Side::north: return {t, m.ny() - 1 - d};
    }
    return {};
  }
  bool normal_is_x() const { return side == Side::west || side == Side::east; }
};

}  // namespace

void apply_boundary_conditions(CellField& field, const BoundaryConditions& bcs,
                               const GasModel& gas) {
  const StructuredMesh& mesh = field.mesh;
  const int g = mesh.ghost_width();
  const double gamma = gas.gamma();
  const ConservedState inflow = to_conserved_unchecked(bcs.inflow, gamma);

  for (Side side : {Side::west, Side::east, Side::south, Side::north}) {
    const BoundaryKind kind = bcs[side];
    if (kind == BoundaryKind::exact_dirichlet && !bcs.exact) {
      throw ConfigError("exact_dirichlet boundary on " + std::string(to_string(side)) +
                        " side without an exact solution");
    }
    if (kind == BoundaryKind::supersonic_inflow) require_admissible(bcs.inflow, "inflow boundary");

    SideAccess access{field, side};
    const int t0 = access.first();
    const int t1 = t0 + access.extent();
    for (int t = t0; t < t1; ++t) {
      for (int k = 1; k <= g; ++k) {
        const CellIndex ghost = access.at(t, -k);
        ConservedState& target = field.states[ghost];
        switch (kind) {
          case BoundaryKind::supersonic_inflow:
            target = inflow;
            break;
          case BoundaryKind::supersonic_outflow:
            target = field.states[access.at(t, 0)];
            break;
          case BoundaryKind::exact_dirichlet:
            target = to_conserved_unchecked(
                bcs.exact(mesh.x_center(ghost.i), mesh.y_center(ghost.j)), gamma);
            break;
          case BoundaryKind::slip_wall: {
            ConservedState mirror = field.states[access.at(t, k - 1)];
            if (access.normal_is_x()) {
              mirror.mom_x = -mirror.mom_x;
            } else {
              mirror.mom_y = -mirror.mom_y;
            }
            target = mirror;
            break;
          }
        }
      }
    }
  }
}

}  // namespace tci
