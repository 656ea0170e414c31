#include <gtest/gtest.h>

#include <array>
#include <random>
#include <sstream>

#include "tci/boundary.hpp"
#include "tci/indicator.hpp"

namespace {

using tci::CellField;
using tci::StructuredMesh;

TEST(IndicatorValue, FormulaOnSmallStencils) {
  const std::array<double, 4> flat{1.0, 1.0, 1.0, 1.0};
  EXPECT_EQ(tci::indicator_value(1.0, flat), 0.0);
  const std::array<double, 4> jump{1.0, 2.5592, 1.0, 1.0};
  const double v = tci::indicator_value(1.0, jump);
  EXPECT_NEAR(v, 1.5592 / (4.0 * 2.5592), 1e-15);
  EXPECT_GT(v, 0.1);
}

TEST(IndicatorValue, ScaleInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.1, 4.0);
  for (int n = 0; n < 200; ++n) {
    const double c = d(rng);
    const std::array<double, 4> nb{d(rng), d(rng), d(rng), d(rng)};
    const double s = d(rng);
    const std::array<double, 4> scaled{s * nb[0], s * nb[1], s * nb[2], s * nb[3]};
    EXPECT_NEAR(tci::indicator_value(s * c, scaled), tci::indicator_value(c, nb), 1e-14);
  }
}

TEST(IndicatorValue, RejectsNonPositiveDensity) {
  const std::array<double, 4> nb{1.0, 0.0, 1.0, 1.0};
  EXPECT_THROW(tci::indicator_value(1.0, nb), tci::InadmissibleState);
  const std::array<double, 4> ok{1.0, 1.0, 1.0, 1.0};
  EXPECT_THROW(tci::indicator_value(-1.0, ok), tci::InadmissibleState);
}

TEST(IndicatorConfig, ThresholdMustBePositive) {
  EXPECT_THROW(tci::validate(tci::IndicatorConfig{0.0}), tci::Error);
  EXPECT_THROW(tci::validate(tci::IndicatorConfig{-0.1}), tci::Error);
  EXPECT_NO_THROW(tci::validate(tci::IndicatorConfig{0.05}));
}

CellField density_field(int n, const std::function<double(int, int)>& rho) {
  const StructuredMesh mesh(n, n, tci::Bounds{0, 0, 1, 1});
  CellField f(mesh);
  const tci::GasModel gas;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      f.states(i, j) = tci::conserved_from_primitive({rho(i, j), 0.0, 0.0, 1.0}, gas);
    }
  }
  tci::apply_boundary_conditions(f, tci::BoundaryConditions{}, gas);
  return f;
}

TEST(FlagTroubledCells, ZeroOnConstantFields) {
  const CellField f = density_field(12, [](int, int) { return 1.7; });
  for (double k : {1e-6, 0.01, 0.05, 0.1}) {
    EXPECT_TRUE(tci::flag_troubled_cells(f, {k}).empty());
  }
}

TEST(FlagTroubledCells, ThresholdIsStrict) {
  // I = 0.25 / (4 * 1.25) = 0.05 at the centre cell
  const CellField f = density_field(8, [](int i, int j) { return (i == 4 && j == 3) ? 1.25 : 1.0; });
  const auto values = tci::indicator_values(f);
  EXPECT_EQ(values(3, 3), 0.05);
  EXPECT_FALSE(tci::flag_troubled_cells(values, {0.05}).flagged(3, 3));
  EXPECT_TRUE(tci::flag_troubled_cells(values, {0.0499}).flagged(3, 3));
}

TEST(FlagTroubledCells, MaskScaleInvariantAndMonotoneInK) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.5, 2.0);
  std::vector<double> rho(20 * 20);
  for (double& r : rho) r = d(rng);
  auto at = [&](int i, int j) { return rho[static_cast<std::size_t>(j) * 20 + i]; };
  const CellField f = density_field(20, at);
  const CellField g = density_field(20, [&](int i, int j) { return 3.7 * at(i, j); });
  std::size_t previous = f.mesh.interior_count() + 1;
  tci::TroubledMask previous_mask = tci::TroubledMask::all(f.mesh);
  for (double k : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    const auto m = tci::flag_troubled_cells(f, {k});
    EXPECT_EQ(m, tci::flag_troubled_cells(g, {k}));
    EXPECT_LE(m.count(), previous);
    EXPECT_TRUE(m.subset_of(previous_mask));
    previous = m.count();
    previous_mask = m;
  }
}

TEST(FlagTroubledCells, FlagsBothSidesOfAJump) {
  const CellField f = density_field(10, [](int i, int) { return i < 5 ? 1.0 : 2.5592; });
  const auto m = tci::flag_troubled_cells(f, {0.1});
  for (int j = 0; j < 10; ++j) {
    EXPECT_TRUE(m.flagged(4, j));
    EXPECT_TRUE(m.flagged(5, j));
    EXPECT_FALSE(m.flagged(2, j));
    EXPECT_FALSE(m.flagged(7, j));
  }
}

TEST(TroubledMask, CountTracksSetCalls) {
  tci::TroubledMask m(4, 4);
  m.set(1, 1, true);
  m.set(1, 1, true);
  m.set(2, 3, true);
  EXPECT_EQ(m.count(), 2u);
  m.set(1, 1, false);
  EXPECT_EQ(m.count(), 1u);
  EXPECT_FALSE(m.empty());
}

TEST(MaskCsv, HeaderAndRows) {
  const CellField f = density_field(4, [](int i, int) { return i < 2 ? 1.0 : 2.0; });
  const auto values = tci::indicator_values(f);
  std::ostringstream out;
  tci::write_mask_csv(out, values, tci::flag_troubled_cells(values, {0.05}));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "i,j,indicator,flagged");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 16);
}

}  // namespace
