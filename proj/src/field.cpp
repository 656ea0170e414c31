#include "tci/field.hpp"

namespace tci {

ConservedState total_conserved(const CellField& field) {
  ConservedState total;
  for (int j = 0; j < field.mesh.ny(); ++j) {
    ConservedState row;
    for (int i = 0; i < field.mesh.nx(); ++i) row += field.states(i, j);
    total += row;
  }
  return field.mesh.cell_volume() * total;
}

}  // namespace tci
