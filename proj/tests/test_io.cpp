#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include <doctest.h>

#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

using namespace corrspec;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("corrspec_io_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

Matrix random_matrix(int n, int T, std::uint64_t seed) {
  Rng rng(seed);
  Matrix Z(n, T);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < T; ++t) Z(i, t) = rng.normal();
  return Z;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.0, 1.0, -1.0, 0.1, 1.0 / 3.0, 3.141592653589793,
                   1e-300, 1e300, 6.02214076e23, -2.5e-8, 1e-15}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-0.0) == "-0");
}

TEST_CASE("csv matrices round-trip bit-exactly") {
  TempDir dir;
  const Matrix M = random_matrix(7, 5, 1);
  const fs::path p = dir.path / "m.csv";
  write_matrix(M, p, MatrixFormat::Csv);
  const Matrix back = read_matrix(p);
  REQUIRE(back.rows() == 7);
  REQUIRE(back.cols() == 5);
  CHECK((back - M).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("binary matrices round-trip bit-exactly") {
  TempDir dir;
  const Matrix M = random_matrix(6, 9, 2);
  const fs::path p = dir.path / "m.bin";
  write_matrix(M, p, MatrixFormat::Binary);
  const Matrix back = read_matrix(p);
  CHECK((back - M).cwiseAbs().maxCoeff() == 0.0);

  // Leading magic identifies the format.
  const std::string bytes = slurp(p);
  REQUIRE(bytes.size() == 4 + 16 + 6 * 9 * 8);
  CHECK(bytes.compare(0, 4, "CNM1") == 0);
}

TEST_CASE("the reader sniffs content, not file names") {
  TempDir dir;
  const Matrix M = random_matrix(3, 4, 3);
  const fs::path p = dir.path / "actually_binary.csv";
  write_matrix(M, p, MatrixFormat::Binary);
  CHECK((read_matrix(p) - M).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("csv header styles") {
  TempDir dir;
  const Matrix M = random_matrix(2, 3, 4);
  const fs::path pi = dir.path / "indices.csv";
  const fs::path pc = dir.path / "coords.csv";
  write_matrix(M, pi, MatrixFormat::Csv, CsvHeader::ColumnIndices);
  write_matrix(M, pc, MatrixFormat::Csv, CsvHeader::CoordinateNames);
  CHECK(slurp(pi).substr(0, 6) == "1,2,3\n");
  CHECK(slurp(pc).substr(0, 9) == "x1,x2,x3\n");
  // Both read back identically; the header line is informational.
  CHECK((read_matrix(pi) - read_matrix(pc)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reading handwritten csv") {
  TempDir dir;
  const fs::path p = dir.path / "hand.csv";
  std::ofstream(p) << "a,b,c\n1,2.5,-3e2\n4,5,6\n";
  const Matrix M = read_matrix(p);
  REQUIRE(M.rows() == 2);
  REQUIRE(M.cols() == 3);
  CHECK(M(0, 1) == 2.5);
  CHECK(M(0, 2) == -300.0);
  CHECK(M(1, 0) == 4.0);
}

TEST_CASE("csv errors carry line numbers") {
  TempDir dir;
  const fs::path ragged = dir.path / "ragged.csv";
  std::ofstream(ragged) << "1,2\n1,2\n3\n";
  CHECK_THROWS_AS(read_matrix(ragged), IoError);
  try {
    read_matrix(ragged);
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }

  const fs::path junk = dir.path / "junk.csv";
  std::ofstream(junk) << "1,2\n1,fish\n";
  CHECK_THROWS_AS(read_matrix(junk), IoError);
}

TEST_CASE("binary errors") {
  TempDir dir;
  const fs::path p = dir.path / "trunc.bin";
  const Matrix M = random_matrix(4, 4, 5);
  write_matrix(M, p, MatrixFormat::Binary);
  std::string bytes = slurp(p);
  std::ofstream(p, std::ios::binary) << bytes.substr(0, bytes.size() - 9);
  CHECK_THROWS_AS(read_matrix(p), IoError);

  // Corrupt dimension header claiming an absurd size.
  std::string huge = bytes;
  const std::uint64_t big = 1ULL << 40;
  std::memcpy(huge.data() + 4, &big, 8);
  std::ofstream(dir.path / "huge.bin", std::ios::binary) << huge;
  CHECK_THROWS_AS(read_matrix(dir.path / "huge.bin"), IoError);
}

TEST_CASE("missing files and empty matrices are errors") {
  TempDir dir;
  CHECK_THROWS_AS(read_matrix(dir.path / "nope.csv"), IoError);
  CHECK_THROWS_AS(
      write_matrix(Matrix(0, 0), dir.path / "empty.csv", MatrixFormat::Csv),
      DomainError);
}

TEST_CASE("atomic_write_text leaves no temporaries behind") {
  TempDir dir;
  const fs::path p = dir.path / "note.txt";
  atomic_write_text(p, "hello\n");
  CHECK(slurp(p) == "hello\n");
  atomic_write_text(p, "replaced\n");
  CHECK(slurp(p) == "replaced\n");
  int entries = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("atomic_write_text fails cleanly on an unwritable directory") {
  CHECK_THROWS_AS(
      atomic_write_text("/nonexistent_dir_xyz/file.txt", "x"), IoError);
}
