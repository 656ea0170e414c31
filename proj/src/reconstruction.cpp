#include "tci/reconstruction.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace tci {

namespace {

using FaceValueFn = double (*)(double, double, double);

PrimitiveState face_from(const PrimitiveState& behind, const PrimitiveState& center,
                         const PrimitiveState& ahead, FaceValueFn fn) {
  return {fn(behind.rho, center.rho, ahead.rho), fn(behind.u, center.u, ahead.u),
          fn(behind.v, center.v, ahead.v), fn(behind.p, center.p, ahead.p)};
}

PrimitiveState face_from(const PrimitiveState& behind, const PrimitiveState& center,
                         const PrimitiveState& ahead, bool limited) {
  return face_from(behind, center, ahead, limited ? limited_face_value : unlimited_face_value);
}

/// Limiter flag lookup for any stored cell, ghosts included.
class LimiterFlags {
 public:
  LimiterFlags(LimitingMode mode, const TroubledMask* mask) : mode_(mode), mask_(mask) {
    if (mode == LimitingMode::restricted && mask == nullptr) {
      throw Error("reconstruction: restricted limiting needs a troubled mask");
    }
  }

  bool operator()(int i, int j) const {
    switch (mode_) {
      case LimitingMode::everywhere:
        return true;
      case LimitingMode::restricted:
        return mask_->flagged(std::clamp(i, 0, mask_->nx() - 1), std::clamp(j, 0, mask_->ny() - 1));
      case LimitingMode::first_order:
        break;
    }
    return false;
  }

 private:
  LimitingMode mode_;
  const TroubledMask* mask_;
};

FacePair checked_pair(const PrimitiveState& a, const PrimitiveState& b, const PrimitiveState& c,
                      const PrimitiveState& d, bool limited_left, bool limited_right,
                      std::size_t& fallbacks) {
  FacePair pair{face_from(a, b, c, limited_left), face_from(d, c, b, limited_right)};
  if (!is_admissible(pair.left) || !is_admissible(pair.right)) {
    ++fallbacks;
    pair = {b, c};
  }
  return pair;
}

}  // namespace

FacePair muscl_face_states(std::span<const PrimitiveState, 4> stencil, bool limited_left,
                           bool limited_right) {
  return {face_from(stencil[0], stencil[1], stencil[2], limited_left),
          face_from(stencil[3], stencil[2], stencil[1], limited_right)};
}

GhostedArray<PrimitiveState> primitive_field(const CellField& field, const GasModel& gas) {
  GhostedArray<PrimitiveState> prims;
  primitive_field(field, gas, prims);
  return prims;
}

void primitive_field(const CellField& field, const GasModel& gas,
                     GhostedArray<PrimitiveState>& prims) {
  const StructuredMesh& mesh = field.mesh;
  const int g = mesh.ghost_width();
  if (prims.nx() != mesh.nx() || prims.ny() != mesh.ny() || prims.ghost_width() != g) {
    prims = GhostedArray<PrimitiveState>(mesh);
  }
  const double gamma = gas.gamma();
  for (int j = -g; j < mesh.ny() + g; ++j) {
    for (int i = -g; i < mesh.nx() + g; ++i) {
      const ConservedState& q = field.states(i, j);
      const PrimitiveState w = to_primitive_unchecked(q, gamma);
      if (!is_admissible(w)) {
        std::ostringstream where;
        where << "cell (" << i << ", " << j << ")";
        require_admissible(w, where.str());
      }
      prims(i, j) = w;
    }
  }
}

FaceStates reconstruct_all_faces(const GhostedArray<PrimitiveState>& prims, LimitingMode mode,
                                 const TroubledMask* mask) {
  FaceStates faces;
  reconstruct_all_faces(prims, mode, mask, faces);
  return faces;
}

void reconstruct_all_faces(const GhostedArray<PrimitiveState>& prims, LimitingMode mode,
                           const TroubledMask* mask, FaceStates& faces) {
  const LimiterFlags limited(mode, mask);
  const int nx = prims.nx();
  const int ny = prims.ny();
  if (mode == LimitingMode::restricted && (mask->nx() != nx || mask->ny() != ny)) {
    throw Error("reconstruction: mask dimensions do not match the field");
  }

  faces.nx = nx;
  faces.ny = ny;
  faces.x_faces.resize(static_cast<std::size_t>(nx + 1) * ny);
  faces.y_faces.resize(static_cast<std::size_t>(nx) * (ny + 1));

  if (mode == LimitingMode::first_order) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        faces.x_faces[static_cast<std::size_t>(j) * (nx + 1) + i] = {prims(i - 1, j), prims(i, j)};
      }
    }
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        faces.y_faces[static_cast<std::size_t>(j) * nx + i] = {prims(i, j - 1), prims(i, j)};
      }
    }
    faces.fallback_count = 0;
    return;
  }

  std::size_t fallbacks = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      faces.x_faces[static_cast<std::size_t>(j) * (nx + 1) + i] =
          checked_pair(prims(i - 2, j), prims(i - 1, j), prims(i, j), prims(i + 1, j),
                       limited(i - 1, j), limited(i, j), fallbacks);
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      faces.y_faces[static_cast<std::size_t>(j) * nx + i] =
          checked_pair(prims(i, j - 2), prims(i, j - 1), prims(i, j), prims(i, j + 1),
                       limited(i, j - 1), limited(i, j), fallbacks);
    }
  }
  faces.fallback_count = fallbacks;
}

FaceStates reconstruct_all_faces(const CellField& field, const GasModel& gas, LimitingMode mode,
                                 const TroubledMask* mask) {
  return reconstruct_all_faces(primitive_field(field, gas), mode, mask);
}

}  // namespace tci
