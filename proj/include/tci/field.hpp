#ifndef TCI_FIELD_HPP
#define TCI_FIELD_HPP

#include <vector>

#include "tci/euler.hpp"
#include "tci/mesh.hpp"

namespace tci {

/// Conserved state on every interior and ghost cell of a mesh.
struct CellField {
  explicit CellField(const StructuredMesh& m, ConservedState fill = {})
      : mesh(m), states(m, fill) {}

  StructuredMesh mesh;
  GhostedArray<ConservedState> states;
  long iteration = 0;
};

struct RowSample {
  double x = 0.0;
  double value = 0.0;
};

/// Interior values of the row nearest y, ordered by increasing x.
template <typename Extract>
std::vector<RowSample> sample_row(const CellField& field, double y, Extract extract) {
  const int j = field.mesh.row_nearest(y);
  std::vector<RowSample> row;
  row.reserve(static_cast<std::size_t>(field.mesh.nx()));
  for (int i = 0; i < field.mesh.nx(); ++i) {
    row.push_back({field.mesh.x_center(i), extract(field.states(i, j))});
  }
  return row;
}

/// Density along the row nearest y.
inline std::vector<RowSample> sample_row(const CellField& field, double y) {
  return sample_row(field, y, [](const ConservedState& q) { return q.rho; });
}

/// Sum of Omega_i Q_i over interior cells, accumulated in a fixed order.
ConservedState total_conserved(const CellField& field);

}  // namespace tci

#endif  // TCI_FIELD_HPP
