#include "tci/output.hpp"

#include <ostream>

#include "tci/csv.hpp"
#include "tci/indicator.hpp"

namespace tci {

std::string header_line(const ArtifactHeader& h) {
  return "# tci config_hash=" + h.config_hash + " case=" + h.case_name + " mode=" + h.mode +
         " limiting=" + h.limiting + " K=" + h.k + " grid=" + std::to_string(h.nx) + "x" +
         std::to_string(h.ny) + " indicator=" + kIndicatorFormula;
}

void write_history_csv(std::ostream& out, const ArtifactHeader& header,
                       const ResidualHistory& history) {
  out << header_line(header) << '\n' << "iteration,RN\n";
  for (std::size_t k = 0; k < history.rn.size(); ++k) {
    out << k + 1 << ',' << format_double(history.rn[k]) << '\n';
  }
}

void write_field_csv(std::ostream& out, const ArtifactHeader& header, const CellField& field,
                     const GasModel& gas) {
  const StructuredMesh& mesh = field.mesh;
  out << header_line(header) << '\n' << "i,j,x,y,rho,u,v,p\n";
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const PrimitiveState w = primitive_from_conserved(field.states(i, j), gas);
      out << i << ',' << j << ',' << format_double(mesh.x_center(i)) << ','
          << format_double(mesh.y_center(j)) << ',' << format_double(w.rho) << ','
          << format_double(w.u) << ',' << format_double(w.v) << ',' << format_double(w.p)
          << '\n';
    }
  }
}

void write_mask_artifact(std::ostream& out, const ArtifactHeader& header,
                         const GhostedArray<double>& indicator, const TroubledMask& mask) {
  out << header_line(header) << '\n';
  write_mask_csv(out, indicator, mask);
}

void write_density_vtk(std::ostream& out, const ArtifactHeader& header, const CellField& field) {
  const StructuredMesh& mesh = field.mesh;
  out << "# vtk DataFile Version 3.0\n"
      << header_line(header).substr(2) << '\n'
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << mesh.nx() + 1 << ' ' << mesh.ny() + 1 << " 1\n"
      << "ORIGIN " << format_double(mesh.bounds().x0) << ' ' << format_double(mesh.bounds().y0)
      << " 0\n"
      << "SPACING " << format_double(mesh.dx()) << ' ' << format_double(mesh.dy()) << " 1\n"
      << "CELL_DATA " << mesh.interior_count() << '\n'
      << "SCALARS density double 1\n"
      << "LOOKUP_TABLE default\n";
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) out << format_double(field.states(i, j).rho) << '\n';
  }
}

}  // namespace tci
