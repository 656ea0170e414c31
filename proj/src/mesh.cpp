#include "tci/mesh.hpp"

#include <cmath>
#include <sstream>

namespace tci {

StructuredMesh::StructuredMesh(int nx, int ny, Bounds bounds, int ghost_width)
    : nx_(nx), ny_(ny), ghost_(ghost_width), bounds_(bounds) {
  std::ostringstream msg;
  if (nx < 4 || ny < 4) {
    msg << "mesh: need nx, ny >= 4, got " << nx << " x " << ny;
  } else if (!(bounds.x1 > bounds.x0) || !(bounds.y1 > bounds.y0)) {
    msg << "mesh: empty domain [" << bounds.x0 << ", " << bounds.x1 << "] x [" << bounds.y0
        << ", " << bounds.y1 << "]";
  } else if (ghost_width < 2) {
    msg << "mesh: ghost width must be >= 2, got " << ghost_width;
  }
  if (!msg.str().empty()) throw InvalidDimension(msg.str());
  dx_ = (bounds.x1 - bounds.x0) / nx;
  dy_ = (bounds.y1 - bounds.y0) / ny;
}

std::array<CellIndex, 4> StructuredMesh::neighbors(CellIndex c) const {
  return {CellIndex{c.i - 1, c.j}, CellIndex{c.i + 1, c.j}, CellIndex{c.i, c.j - 1},
          CellIndex{c.i, c.j + 1}};
}

int StructuredMesh::row_nearest(double y) const {
  if (!(y >= bounds_.y0 && y <= bounds_.y1)) {
    std::ostringstream msg;
    msg << "sample row: y=" << y << " outside [" << bounds_.y0 << ", " << bounds_.y1 << "]";
    throw RangeError(msg.str());
  }
  // Row j spans [y0 + j dy, y0 + (j+1) dy); floor puts a face coordinate in the row above.
  const double s = (y - bounds_.y0) / dy_;
  int j = static_cast<int>(std::floor(s));
  // Guard against s landing a hair below an integer through rounding.
  if (std::abs(s - std::round(s)) < 1e-9) j = static_cast<int>(std::round(s));
  if (j >= ny_) j = ny_ - 1;
  if (j < 0) j = 0;
  return j;
}

StructuredMesh build_mesh(int nx, int ny, Bounds bounds) { return StructuredMesh(nx, ny, bounds); }

}  // namespace tci
