#ifndef TCI_OUTPUT_HPP
#define TCI_OUTPUT_HPP

#include <iosfwd>
#include <string>

#include "tci/field.hpp"
#include "tci/solver.hpp"

namespace tci {

/// Metadata written as the first line of every artifact.
struct ArtifactHeader {
  std::string config_hash;
  std::string case_name;
  std::string mode;      ///< steady | unsteady
  std::string limiting;  ///< setting name, e.g. restricted
  std::string k;         ///< threshold or `none`
  int nx = 0;
  int ny = 0;
};

/// `# tci config_hash=... case=... mode=... limiting=... K=... grid=NXxNY indicator=...`
std::string header_line(const ArtifactHeader& header);

/// `iteration,RN` with 1-based iterations.
void write_history_csv(std::ostream& out, const ArtifactHeader& header,
                       const ResidualHistory& history);

/// `i,j,x,y,rho,u,v,p` over interior cells, row-major.
void write_field_csv(std::ostream& out, const ArtifactHeader& header, const CellField& field,
                     const GasModel& gas);

/// Indicator values and flags, `i,j,indicator,flagged`.
void write_mask_artifact(std::ostream& out, const ArtifactHeader& header,
                         const GhostedArray<double>& indicator, const TroubledMask& mask);

/// Legacy ASCII VTK structured points holding cell-centred density. The
/// header line is stored as the dataset title.
void write_density_vtk(std::ostream& out, const ArtifactHeader& header, const CellField& field);

}  // namespace tci

#endif  // TCI_OUTPUT_HPP
