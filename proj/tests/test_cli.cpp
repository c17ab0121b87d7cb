// End-to-end tests of the command line tool. The binary path arrives in the
// PPURSUIT_CLI environment variable (set by the test harness); every case
// works inside its own temporary directory and checks exit codes, standard
// streams, and output files.

#include <sys/wait.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "testutil.hpp"

namespace {

using namespace ppursuit;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string cli_path() {
  const char* env = std::getenv("PPURSUIT_CLI");
  REQUIRE_MESSAGE(env != nullptr, "PPURSUIT_CLI must point at the ppursuit binary");
  return env;
}

RunResult run_cli(const testutil::TempDir& dir, const std::string& args) {
  const std::string out_path = dir.file("__stdout.txt");
  const std::string err_path = dir.file("__stderr.txt");
  const std::string cmd = cli_path() + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = testutil::read_text(out_path);
  r.err = testutil::read_text(err_path);
  return r;
}

// 4 cells x 3 genes; gene g2 is zero in 3 of 4 cells.
const char* kSmallCounts =
    "cell_id,g1,g2,g3\n"
    "c1,5,0,1\n"
    "c2,3,0,2\n"
    "c3,8,0,4\n"
    "c4,2,7,3\n";

const char* kSmallLabels =
    "cell_id,label\n"
    "c1,a\n"
    "c2,a\n"
    "c3,b\n"
    "c4,b\n";

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Parses an embedding CSV body (skipping the header) into a matrix.
Matrix embedding_values(const std::string& path, std::size_t cols) {
  const std::vector<std::string> lines = lines_of(testutil::read_text(path));
  REQUIRE(lines.size() >= 2);
  Matrix m(lines.size() - 1, cols);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string field;
    std::getline(row, field, ',');  // cell id
    for (std::size_t j = 0; j < cols; ++j) {
      std::getline(row, field, ',');
      m(i - 1, j) = std::stod(field);
    }
  }
  return m;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors and help") {
  testutil::TempDir dir;
  CHECK(run_cli(dir, "").exit_code == 1);
  CHECK(run_cli(dir, "no-such-command").exit_code == 1);
  CHECK(run_cli(dir, "--help").exit_code == 0);
  const RunResult version = run_cli(dir, "--version");
  CHECK(version.exit_code == 0);
  CHECK(version.out.find("0.1.0") != std::string::npos);
  // Missing required positional arguments are usage errors too.
  CHECK(run_cli(dir, "pca").exit_code == 1);
}

TEST_CASE("preprocess filters, normalizes, and reports") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("counts.csv"), kSmallCounts);

  const RunResult r = run_cli(dir, "preprocess " + dir.file("counts.csv") + " " +
                                       dir.file("out.csv") + " --zero-frac=0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "kept 2 of 3 genes, 4 cells\n");

  const std::vector<std::string> lines = lines_of(testutil::read_text(dir.file("out.csv")));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "cell_id,g1,g3");

  // The manifest records enough to reproduce the run.
  const std::string manifest = testutil::read_text(dir.file("out.csv.manifest"));
  CHECK(manifest.find("command=preprocess\n") != std::string::npos);
  CHECK(manifest.find("version=0.1.0\n") != std::string::npos);
  CHECK(manifest.find("zero_frac=0.5\n") != std::string::npos);
  CHECK(manifest.find("input_digest=fnv1a64:") != std::string::npos);
  CHECK(manifest.find("output=" + dir.file("out.csv")) != std::string::npos);
}

TEST_CASE("preprocess --zero-frac=1.0 removes nothing") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("counts.csv"), kSmallCounts);
  const RunResult r = run_cli(dir, "preprocess " + dir.file("counts.csv") + " " +
                                       dir.file("out.csv") + " --zero-frac=1.0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "kept 3 of 3 genes, 4 cells\n");
}

TEST_CASE("preprocess malformed input exits 2 with coordinates") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("bad.csv"), "cell_id,g1,g2\nc1,1,2\nc2,3,oops\n");
  const RunResult r = run_cli(dir, "preprocess " + dir.file("bad.csv") + " " + dir.file("o.csv"));
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("row 3") != std::string::npos);
  CHECK(r.err.find("column 3") != std::string::npos);
}

TEST_CASE("preprocess removing every gene exits 3") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("z.csv"), "cell_id,g1,g2\nc1,0,0\nc2,0,1\n");
  const RunResult r =
      run_cli(dir, "preprocess " + dir.file("z.csv") + " " + dir.file("o.csv") + " --zero-frac=0.4");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("removed") != std::string::npos);
}

TEST_CASE("pca writes a k-column embedding and explained variances") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("counts.csv"), kSmallCounts);
  const RunResult r =
      run_cli(dir, "pca " + dir.file("counts.csv") + " " + dir.file("emb.csv") + " --k=2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("component 1: explained_variance=") != std::string::npos);
  CHECK(r.out.find("component 2: explained_variance=") != std::string::npos);

  const std::vector<std::string> lines = lines_of(testutil::read_text(dir.file("emb.csv")));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "cell_id,dim1,dim2");
  CHECK(lines[1].rfind("c1,", 0) == 0);  // row order equals input order
  CHECK(lines[4].rfind("c4,", 0) == 0);
}

TEST_CASE("pca k above the feature count exits 4") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("counts.csv"), kSmallCounts);
  const RunResult r =
      run_cli(dir, "pca " + dir.file("counts.csv") + " " + dir.file("emb.csv") + " --k=9");
  CHECK(r.exit_code == 4);
  CHECK(r.err.find("k must satisfy") != std::string::npos);
}

TEST_CASE("pca plot with labels colors per label") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("counts.csv"), kSmallCounts);
  testutil::write_text(dir.file("labels.csv"), kSmallLabels);
  const RunResult r = run_cli(dir, "pca " + dir.file("counts.csv") + " " + dir.file("emb.csv") +
                                       " --k=2 --labels=" + dir.file("labels.csv") +
                                       " --plot=" + dir.file("emb.svg"));
  CHECK(r.exit_code == 0);
  const std::string svg = testutil::read_text(dir.file("emb.svg"));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find(">a</text>") != std::string::npos);
  CHECK(svg.find(">b</text>") != std::string::npos);
  CHECK(svg.find("#4e79a7") != std::string::npos);  // first two palette colors
  CHECK(svg.find("#f28e2b") != std::string::npos);
  // Plots get manifests too.
  CHECK(testutil::read_text(dir.file("emb.svg.manifest")).find("command=pca") !=
        std::string::npos);
}

TEST_CASE("pca plot with k other than 2 is a usage error") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("counts.csv"), kSmallCounts);
  const RunResult r = run_cli(dir, "pca " + dir.file("counts.csv") + " " + dir.file("emb.csv") +
                                       " --k=3 --plot=" + dir.file("emb.svg"));
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("--plot requires --k=2") != std::string::npos);
}

TEST_CASE("labels file missing a cell exits 2") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("counts.csv"), kSmallCounts);
  testutil::write_text(dir.file("labels.csv"), "cell_id,label\nc1,a\nc2,a\nc3,b\n");
  const RunResult r = run_cli(dir, "pca " + dir.file("counts.csv") + " " + dir.file("emb.csv") +
                                       " --k=2 --labels=" + dir.file("labels.csv") +
                                       " --plot=" + dir.file("emb.svg"));
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("c4") != std::string::npos);
}

TEST_CASE("pp with the variance index reproduces pca up to per-axis sign") {
  testutil::TempDir dir;
  const std::string gen = "synth-clusters " + dir.file("data.csv") + " " + dir.file("lab.csv") +
                          " --n=200 --dim=6 --seed=11";
  REQUIRE(run_cli(dir, gen).exit_code == 0);

  REQUIRE(run_cli(dir, "pca " + dir.file("data.csv") + " " + dir.file("pca.csv") + " --k=2")
              .exit_code == 0);
  REQUIRE(run_cli(dir, "pp " + dir.file("data.csv") + " " + dir.file("pp.csv") +
                           " --index=variance --k=2 --seed=4")
              .exit_code == 0);

  const Matrix pca_emb = embedding_values(dir.file("pca.csv"), 2);
  const Matrix pp_emb = embedding_values(dir.file("pp.csv"), 2);
  REQUIRE(pca_emb.rows() == pp_emb.rows());
  for (std::size_t j = 0; j < 2; ++j) {
    const double angle =
        testutil::line_angle(testutil::column(pca_emb, j), testutil::column(pp_emb, j));
    CHECK(angle < 1e-3);
  }
}

TEST_CASE("pp unknown index exits 1 and lists the valid names") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("counts.csv"), kSmallCounts);
  const RunResult r = run_cli(
      dir, "pp " + dir.file("counts.csv") + " " + dir.file("o.csv") + " --index=entropy");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("logcosh") != std::string::npos);
  CHECK(r.err.find("cumulant") != std::string::npos);
  CHECK(r.err.find("variance") != std::string::npos);
}

TEST_CASE("pp alpha outside [1, 2] exits 4") {
  testutil::TempDir dir;
  testutil::write_text(dir.file("counts.csv"), kSmallCounts);
  const RunResult r = run_cli(dir, "pp " + dir.file("counts.csv") + " " + dir.file("o.csv") +
                                       " --index=logcosh --alpha=0.25");
  CHECK(r.exit_code == 4);
  CHECK(r.err.find("[1, 2]") != std::string::npos);
}

TEST_CASE("pp separates the synthetic clusters that pca misses") {
  testutil::TempDir dir;
  const std::string gen = "synth-clusters " + dir.file("data.csv") + " " + dir.file("lab.csv") +
                          " --n=600 --dim=10 --separation=4 --spread=10 --seed=3";
  REQUIRE(run_cli(dir, gen).exit_code == 0);
  const RunResult r = run_cli(dir, "pp " + dir.file("data.csv") + " " + dir.file("pp.csv") +
                                       " --index=logcosh --k=1 --seed=5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("direction 1: value=") != std::string::npos);
  CHECK(r.out.find("restart=") != std::string::npos);

  // The projection onto the pursued axis should split the two label groups
  // almost perfectly: classify by thresholding at the midpoint of the group
  // means and demand at least 95% agreement.
  const Matrix emb = embedding_values(dir.file("pp.csv"), 1);
  const std::vector<std::string> labels = lines_of(testutil::read_text(dir.file("lab.csv")));
  REQUIRE(labels.size() == emb.rows() + 1);
  double mean0 = 0.0;
  double mean1 = 0.0;
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  for (std::size_t i = 0; i < emb.rows(); ++i) {
    const bool group1 = labels[i + 1].find("cluster1") != std::string::npos;
    (group1 ? mean1 : mean0) += emb(i, 0);
    ++(group1 ? n1 : n0);
  }
  REQUIRE(n0 > 0);
  REQUIRE(n1 > 0);
  mean0 /= static_cast<double>(n0);
  mean1 /= static_cast<double>(n1);
  const double midpoint = 0.5 * (mean0 + mean1);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < emb.rows(); ++i) {
    const bool group1 = labels[i + 1].find("cluster1") != std::string::npos;
    const bool above = emb(i, 0) > midpoint;
    const bool group1_above = mean1 > midpoint;
    if ((group1 && above == group1_above) || (!group1 && above != group1_above)) ++agree;
  }
  CHECK(static_cast<double>(agree) >= 0.95 * static_cast<double>(emb.rows()));
}

TEST_CASE("spectrum prints the distance and repeats byte-identically") {
  testutil::TempDir dir;
  const std::string args = "spectrum " + dir.file("eig.csv") + " --n=300 --d=120 --seed=9";
  const RunResult r1 = run_cli(dir, args);
  CHECK(r1.exit_code == 0);
  CHECK(r1.out.rfind("l1_distance=", 0) == 0);

  const std::string first = testutil::read_text(dir.file("eig.csv"));
  const RunResult r2 = run_cli(dir, args);
  CHECK(r2.exit_code == 0);
  CHECK(testutil::read_text(dir.file("eig.csv")) == first);
  CHECK(r2.out == r1.out);

  const std::vector<std::string> lines = lines_of(first);
  REQUIRE(lines.size() == 121);
  CHECK(lines[0] == "eigenvalue");
}

TEST_CASE("spectrum d above n exits 4") {
  testutil::TempDir dir;
  const RunResult r = run_cli(dir, "spectrum " + dir.file("e.csv") + " --n=50 --d=100");
  CHECK(r.exit_code == 4);
}

TEST_CASE("spectrum plot writes the histogram overlay") {
  testutil::TempDir dir;
  const RunResult r = run_cli(dir, "spectrum " + dir.file("e.csv") +
                                       " --n=200 --d=80 --seed=1 --plot=" + dir.file("e.svg"));
  CHECK(r.exit_code == 0);
  const std::string svg = testutil::read_text(dir.file("e.svg"));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<rect") != std::string::npos);      // histogram bars
  CHECK(svg.find("<polyline") != std::string::npos);  // density curve
}

TEST_CASE("dfcheck prints median, min, and max") {
  testutil::TempDir dir;
  const RunResult r = run_cli(dir, "dfcheck --n=400 --d=200 --m=11 --seed=2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("ks median=", 0) == 0);
  CHECK(r.out.find(" min=") != std::string::npos);
  CHECK(r.out.find(" max=") != std::string::npos);
}

TEST_CASE("jl reports the distortion verdict") {
  testutil::TempDir dir;
  REQUIRE(run_cli(dir, "synth-clusters " + dir.file("d.csv") + " " + dir.file("l.csv") +
                           " --n=40 --dim=300 --seed=6")
              .exit_code == 0);
  const RunResult r =
      run_cli(dir, "jl " + dir.file("d.csv") + " --r=250 --delta=0.9 --seed=1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("r=250") != std::string::npos);
  CHECK(r.out.find("max_relative=") != std::string::npos);
  CHECK(r.out.find("result=") != std::string::npos);

  const RunResult guard = run_cli(dir, "jl " + dir.file("d.csv") + " --r=301");
  CHECK(guard.exit_code == 4);
}

TEST_CASE("synth-clusters writes data, labels, and manifests") {
  testutil::TempDir dir;
  const RunResult r = run_cli(dir, "synth-clusters " + dir.file("d.csv") + " " +
                                       dir.file("l.csv") + " --n=50 --dim=4 --seed=8");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "wrote 50 cells, 4 features\n");

  const std::vector<std::string> data_lines = lines_of(testutil::read_text(dir.file("d.csv")));
  REQUIRE(data_lines.size() == 51);
  CHECK(data_lines[0] == "cell_id,f1,f2,f3,f4");

  const std::vector<std::string> label_lines = lines_of(testutil::read_text(dir.file("l.csv")));
  REQUIRE(label_lines.size() == 51);
  CHECK(label_lines[0] == "cell_id,label");
  std::size_t zeros = 0;
  for (std::size_t i = 1; i < label_lines.size(); ++i) {
    if (label_lines[i].find("cluster0") != std::string::npos) ++zeros;
  }
  CHECK(zeros == 25);  // balanced assignment

  CHECK(testutil::read_text(dir.file("d.csv.manifest")).find("command=synth-clusters") !=
        std::string::npos);
  CHECK(testutil::read_text(dir.file("l.csv.manifest")).find("seed=8") != std::string::npos);
}

TEST_CASE("pp runs are bit-reproducible for a fixed seed") {
  testutil::TempDir dir;
  REQUIRE(run_cli(dir, "synth-clusters " + dir.file("d.csv") + " " + dir.file("l.csv") +
                           " --n=120 --dim=5 --seed=14")
              .exit_code == 0);
  const std::string args = "pp " + dir.file("d.csv") + " " + dir.file("out.csv") +
                           " --index=cumulant --k=2 --seed=21 --plot=" + dir.file("out.svg");
  const RunResult r1 = run_cli(dir, args);
  REQUIRE(r1.exit_code == 0);
  const std::string csv1 = testutil::read_text(dir.file("out.csv"));
  const std::string svg1 = testutil::read_text(dir.file("out.svg"));

  const RunResult r2 = run_cli(dir, args);
  REQUIRE(r2.exit_code == 0);
  CHECK(testutil::read_text(dir.file("out.csv")) == csv1);
  CHECK(testutil::read_text(dir.file("out.svg")) == svg1);
  CHECK(r2.out == r1.out);
}

}  // TEST_SUITE("cli")
