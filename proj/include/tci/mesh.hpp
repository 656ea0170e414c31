#ifndef TCI_MESH_HPP
#define TCI_MESH_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "tci/euler.hpp"

namespace tci {

struct Bounds {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;
};

/// Column i, row j. Interior cells are 0 <= i < nx, 0 <= j < ny; ghosts extend
/// ghost_width cells beyond on every side.
struct CellIndex {
  int i = 0;
  int j = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Uniform Cartesian quadrilateral mesh. Immutable after construction.
class StructuredMesh {
 public:
  StructuredMesh(int nx, int ny, Bounds bounds, int ghost_width = 2);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost_width() const { return ghost_; }
  const Bounds& bounds() const { return bounds_; }

  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double cell_volume() const { return dx_ * dy_; }
  std::size_t interior_count() const { return static_cast<std::size_t>(nx_) * ny_; }

  /// Area of a face whose normal is along x (a vertical face).
  double x_face_area() const { return dy_; }
  /// Area of a face whose normal is along y (a horizontal face).
  double y_face_area() const { return dx_; }

  double x_center(int i) const { return bounds_.x0 + (i + 0.5) * dx_; }
  double y_center(int j) const { return bounds_.y0 + (j + 0.5) * dy_; }

  bool is_interior(CellIndex c) const { return c.i >= 0 && c.i < nx_ && c.j >= 0 && c.j < ny_; }
  bool in_storage(CellIndex c) const {
    return c.i >= -ghost_ && c.i < nx_ + ghost_ && c.j >= -ghost_ && c.j < ny_ + ghost_;
  }

  /// Face-adjacent cells in the order west, east, south, north.
  std::array<CellIndex, 4> neighbors(CellIndex c) const;

  /// Outward unit normals of a cell's faces, in the same order as neighbors().
  static constexpr std::array<Normal, 4> face_normals() {
    return {Normal{-1.0, 0.0}, Normal{1.0, 0.0}, Normal{0.0, -1.0}, Normal{0.0, 1.0}};
  }
  std::array<double, 4> face_areas() const { return {dy_, dy_, dx_, dx_}; }

  /// Interior row whose centres are nearest y. A y lying exactly on a face
  /// selects the row above it. Throws RangeError outside [y0, y1].
  int row_nearest(double y) const;

 private:
  int nx_;
  int ny_;
  int ghost_;
  Bounds bounds_;
  double dx_;
  double dy_;
};

StructuredMesh build_mesh(int nx, int ny, Bounds bounds);

/// Dense storage over interior and ghost cells of a mesh.
template <typename T>
class GhostedArray {
 public:
  GhostedArray() = default;
  GhostedArray(const StructuredMesh& mesh, T fill = T{})
      : nx_(mesh.nx()),
        ny_(mesh.ny()),
        ghost_(mesh.ghost_width()),
        stride_(mesh.nx() + 2 * mesh.ghost_width()),
        data_(static_cast<std::size_t>(stride_) * (mesh.ny() + 2 * mesh.ghost_width()), fill) {}

  T& operator()(int i, int j) { return data_[offset(i, j)]; }
  const T& operator()(int i, int j) const { return data_[offset(i, j)]; }
  T& operator[](CellIndex c) { return (*this)(c.i, c.j); }
  const T& operator[](CellIndex c) const { return (*this)(c.i, c.j); }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost_width() const { return ghost_; }

  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

  friend bool operator==(const GhostedArray&, const GhostedArray&) = default;

 private:
  std::size_t offset(int i, int j) const {
    return static_cast<std::size_t>(j + ghost_) * stride_ + static_cast<std::size_t>(i + ghost_);
  }

  int nx_ = 0;
  int ny_ = 0;
  int ghost_ = 0;
  int stride_ = 0;
  std::vector<T> data_;
};

}  // namespace tci

#endif  // TCI_MESH_HPP
