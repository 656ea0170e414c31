#ifndef TCI_RECONSTRUCTION_HPP
#define TCI_RECONSTRUCTION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "tci/euler.hpp"
#include "tci/field.hpp"
#include "tci/indicator.hpp"

namespace tci {

/// Where the slope limiter acts.
enum class LimitingMode {
  first_order,  ///< piecewise-constant faces, no reconstruction
  everywhere,   ///< limited MUSCL in every cell
  restricted,   ///< limited MUSCL in troubled cells, unlimited elsewhere
};

/// kappa of the unlimited MUSCL family.
inline constexpr double kMusclKappa = 1.0 / 3.0;
/// Below this backward difference a limited slope is set to zero.
inline constexpr double kDegenerateSlope = 1e-12;

/// Koren limiter phi(r) = max(0, min(2r, (1 + 2r)/3, 2)).
inline double koren_phi(double r) {
  const double a = 2.0 * r;
  const double b = (1.0 + 2.0 * r) / 3.0;
  double m = a < b ? a : b;
  if (m > 2.0) m = 2.0;
  return m > 0.0 ? m : 0.0;
}

/// Value at the face between `center` and `ahead`, using `behind` for the
/// backward difference. Koren-limited.
inline double limited_face_value(double behind, double center, double ahead) {
  const double backward = center - behind;
  if (backward < kDegenerateSlope && backward > -kDegenerateSlope) return center;
  const double r = (ahead - center) / backward;
  return center + 0.5 * koren_phi(r) * backward;
}

/// Unlimited kappa-scheme face value between `center` and `ahead`.
inline double unlimited_face_value(double behind, double center, double ahead) {
  return center + 0.25 * ((1.0 - kMusclKappa) * (center - behind) +
                          (1.0 + kMusclKappa) * (ahead - center));
}

/// Primitive states on either side of one face.
struct FacePair {
  PrimitiveState left;
  PrimitiveState right;
};

/// Face states for the face between stencil[1] and stencil[2], where the
/// stencil holds four consecutive cells in increasing coordinate order.
/// `limited_left` / `limited_right` select the limiter for the contribution of
/// stencil[1] / stencil[2]. No admissibility fallback.
FacePair muscl_face_states(std::span<const PrimitiveState, 4> stencil, bool limited_left,
                           bool limited_right);

/// Reconstructed states on every interior face.
///
/// x-face (i, j), 0 <= i <= nx, sits between cells (i-1, j) and (i, j).
/// y-face (i, j), 0 <= j <= ny, sits between cells (i, j-1) and (i, j).
struct FaceStates {
  int nx = 0;
  int ny = 0;
  std::vector<FacePair> x_faces;
  std::vector<FacePair> y_faces;
  /// Faces that fell back to first order after a non-positive density or pressure.
  std::size_t fallback_count = 0;

  const FacePair& x_face(int i, int j) const {
    return x_faces[static_cast<std::size_t>(j) * (nx + 1) + i];
  }
  const FacePair& y_face(int i, int j) const {
    return y_faces[static_cast<std::size_t>(j) * nx + i];
  }
};

/// Primitive states of every cell, ghosts included. Throws InadmissibleState
/// naming the first bad cell.
GhostedArray<PrimitiveState> primitive_field(const CellField& field, const GasModel& gas);
/// Same, reusing `out`'s storage.
void primitive_field(const CellField& field, const GasModel& gas, GhostedArray<PrimitiveState>& out);

/// MUSCL reconstruction of every interior face. In restricted mode `mask`
/// is required; ghost cells take the flag of the nearest interior cell.
FaceStates reconstruct_all_faces(const GhostedArray<PrimitiveState>& prims, LimitingMode mode,
                                 const TroubledMask* mask = nullptr);
void reconstruct_all_faces(const GhostedArray<PrimitiveState>& prims, LimitingMode mode,
                           const TroubledMask* mask, FaceStates& out);

FaceStates reconstruct_all_faces(const CellField& field, const GasModel& gas, LimitingMode mode,
                                 const TroubledMask* mask = nullptr);

}  // namespace tci

#endif  // TCI_RECONSTRUCTION_HPP
