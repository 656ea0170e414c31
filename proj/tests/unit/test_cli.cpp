#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tci/commands.hpp"

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("tci_cli_") + info->name() + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int tci(const std::string& args) {
    const std::string cmd = std::string(TCI_CLI_PATH) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

const char* kSmallAligned =
    "case = aligned_oblique_shock\nnx = 48\nny = 48\nmax_iterations = 30\nwindow = 10\n";

TEST_F(CliTest, RunWritesFourArtifactsWithHeaders) {
  const auto cfg = write_config("a.cfg", std::string(kSmallAligned) + "limiting = everywhere\n");
  ASSERT_EQ(tci("run --config " + cfg.string() + " --out " + (dir_ / "out").string()), 0)
      << slurp(dir_ / "stderr.txt");
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "out")) {
    ++files;
    const std::string text = slurp(e.path());
    EXPECT_EQ(text.rfind("# tci config_hash=", 0), 0u) << e.path();
    EXPECT_NE(text.find("case=aligned_oblique_shock"), std::string::npos);
    EXPECT_NE(text.find("grid=48x48"), std::string::npos);
    EXPECT_NE(text.find("K=none"), std::string::npos);
  }
  EXPECT_EQ(files, 4u);
  const std::string history = slurp(dir_ / "out" / "history.csv");
  EXPECT_NE(history.find("\niteration,RN\n1,"), std::string::npos);
  const std::string field = slurp(dir_ / "out" / "field.csv");
  EXPECT_NE(field.find("\ni,j,x,y,rho,u,v,p\n"), std::string::npos);
}

TEST_F(CliTest, ArtifactsAreBitIdenticalAcrossRuns) {
  const auto cfg = write_config(
      "a.cfg", std::string(kSmallAligned) + "limiting = restricted\nk = 0.05\nvtk_file = rho.vtk\n");
  ASSERT_EQ(tci("run --config " + cfg.string() + " --out " + (dir_ / "one").string()), 0);
  ASSERT_EQ(tci("run --config " + cfg.string() + " --out " + (dir_ / "two").string()), 0);
  for (const char* name : {"history.csv", "field.csv", "mask.csv", "report.csv", "rho.vtk"}) {
    EXPECT_EQ(slurp(dir_ / "one" / name), slurp(dir_ / "two" / name)) << name;
  }
  EXPECT_EQ(slurp(dir_ / "one" / "rho.vtk").rfind("# vtk DataFile Version 3.0\n", 0), 0u);
}

TEST_F(CliTest, MalformedKeyIsAConfigErrorWithoutArtifacts) {
  const auto cfg = write_config("bad.cfg", std::string(kSmallAligned) + "limitng = everywhere\n");
  EXPECT_EQ(tci("run --config " + cfg.string() + " --out " + (dir_ / "out").string()),
            tci::kExitConfigError);
  EXPECT_FALSE(fs::exists(dir_ / "out"));
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("limitng"), std::string::npos);
}

TEST_F(CliTest, RestrictedWithoutKNamesTheKey) {
  const auto cfg = write_config("r.cfg", std::string(kSmallAligned) + "limiting = restricted\n");
  EXPECT_EQ(tci("run --config " + cfg.string() + " --out " + (dir_ / "out").string()),
            tci::kExitConfigError);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("'k'"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, RefusesToOverwriteWithoutForce) {
  const auto cfg = write_config("a.cfg", kSmallAligned);
  const std::string args = "run --config " + cfg.string() + " --out " + (dir_ / "out").string();
  ASSERT_EQ(tci(args), 0);
  EXPECT_EQ(tci(args), tci::kExitIoError);
  EXPECT_EQ(tci(args + " --force"), 0);
}

TEST_F(CliTest, MissingConfigFileIsAnIoError) {
  EXPECT_EQ(tci("run --config " + (dir_ / "nope.cfg").string() + " --out " +
                (dir_ / "out").string()),
            tci::kExitIoError);
}

TEST_F(CliTest, UsageErrorsAreConfigErrors) {
  EXPECT_EQ(tci("launch"), tci::kExitConfigError);
  EXPECT_EQ(tci("run --out x"), tci::kExitConfigError);
}

TEST_F(CliTest, NumericalFailureExitCode) {
  const auto cfg = write_config("cfl.cfg", "case = aligned_oblique_shock\nnx = 48\nny = 48\n"
                                           "limiting = everywhere\ncfl = 1\nmax_iterations = 3000\n");
  EXPECT_EQ(tci("run --config " + cfg.string() + " --out " + (dir_ / "out").string()),
            tci::kExitNumericalFailure);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("iteration"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, FlagWritesOneMaskPerThresholdAndSummary) {
  const auto cfg = write_config("f.cfg", std::string(kSmallAligned) + "k_list = 0.02, 0.05, 0.1\n");
  ASSERT_EQ(tci("flag --config " + cfg.string() + " --out " + (dir_ / "out").string()), 0)
      << slurp(dir_ / "stderr.txt");
  for (const char* name : {"mask_K0.02.csv", "mask_K0.05.csv", "mask_K0.1.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / name)) << name;
  }
  std::istringstream summary(slurp(dir_ / "out" / "flag_summary.csv"));
  std::string line;
  std::getline(summary, line);
  std::getline(summary, line);
  EXPECT_EQ(line, "K,flagged,pre_shock,post_shock");
  long previous = -1;
  int rows = 0;
  while (std::getline(summary, line)) {
    ++rows;
    const long flagged = std::stol(line.substr(line.find(',') + 1));
    if (previous >= 0) EXPECT_LE(flagged, previous);
    previous = flagged;
  }
  EXPECT_EQ(rows, 3);
}

TEST_F(CliTest, FlagWithoutThresholdsIsAConfigError) {
  const auto cfg = write_config("f.cfg", kSmallAligned);
  EXPECT_EQ(tci("flag --config " + cfg.string() + " --out " + (dir_ / "out").string()),
            tci::kExitConfigError);
}

TEST_F(CliTest, CompareRowsFollowConfigOrder) {
  const auto cfg = write_config(
      "c.cfg", std::string(kSmallAligned) + "compare = restricted:0.05, everywhere, straddle\n");
  ASSERT_EQ(tci("compare --config " + cfg.string() + " --out " + (dir_ / "out").string()), 0)
      << slurp(dir_ / "stderr.txt");
  std::istringstream csv(slurp(dir_ / "out" / "compare.csv"));
  std::string line;
  std::getline(csv, line);
  std::getline(csv, line);
  EXPECT_NE(line.find(",mu,"), std::string::npos);
  EXPECT_NE(line.find("wall_time_s"), std::string::npos);
  std::vector<std::string> labels;
  while (std::getline(csv, line)) labels.push_back(line.substr(0, line.find(',')));
  EXPECT_EQ(labels, (std::vector<std::string>{"restricted:0.05", "everywhere", "straddle"}));
}

TEST_F(CliTest, CompareNeedsTwoSettingsAndOneGrid) {
  auto cfg = write_config("c1.cfg", std::string(kSmallAligned) + "compare = everywhere\n");
  EXPECT_EQ(tci("compare --config " + cfg.string() + " --out " + (dir_ / "o1").string()),
            tci::kExitConfigError);
  cfg = write_config("c2.cfg",
                     std::string(kSmallAligned) + "compare = everywhere, restricted:0.05@100x100\n");
  EXPECT_EQ(tci("compare --config " + cfg.string() + " --out " + (dir_ / "o2").string()),
            tci::kExitConfigError);
}

TEST_F(CliTest, UnsteadyRunReportsConservation) {
  const auto cfg = write_config("u.cfg", "case = riemann2d\nnx = 24\nny = 24\nlimiting = restricted\n"
                                         "k = 0.05\nfinal_time = 0.05\n");
  ASSERT_EQ(tci("run --config " + cfg.string() + " --out " + (dir_ / "out").string()), 0)
      << slurp(dir_ / "stderr.txt");
  const std::string report = slurp(dir_ / "out" / "report.csv");
  EXPECT_NE(report.find("mode=unsteady"), std::string::npos);
  EXPECT_NE(report.find("relative_imbalance"), std::string::npos);
  EXPECT_NE(report.find("riemann2d,restricted,0.05,mass,"), std::string::npos);
}

TEST_F(CliTest, CasesList) {
  ASSERT_EQ(tci("cases-list"), 0);
  const std::string out = slurp(dir_ / "stdout.txt");
  EXPECT_NE(out.find("aligned_oblique_shock"), std::string::npos);
  EXPECT_NE(out.find("nonaligned_oblique_shock"), std::string::npos);
  EXPECT_NE(out.find("riemann2d"), std::string::npos);
}

TEST(Execute, MapsErrorsWithoutTheBinary) {
  std::ostringstream out;
  std::ostringstream err;
  tci::CommandOptions o;
  o.command = tci::Command::run;
  o.config = "/nonexistent/config.cfg";
  o.out = "/tmp/never";
  EXPECT_EQ(tci::execute(o, out, err), tci::kExitIoError);
  o.command = tci::Command::cases_list;
  EXPECT_EQ(tci::execute(o, out, err), tci::kExitOk);
  EXPECT_FALSE(tci::parse_command("explode").has_value());
}

}  // namespace
