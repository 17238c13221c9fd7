#include "core/io.hpp"

#include <unistd.h>

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <system_error>
#include <vector>

#include "core/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary matrix format assumes a little-endian host");
static_assert(sizeof(double) == 8, "binary matrix format assumes 8-byte doubles");

namespace corrspec {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'C', 'N', 'M', '1'};

[[noreturn]] void io_fail(const fs::path& path, const std::string& what) {
  throw IoError(what + ": " + path.string());
}

void append_u64(std::string& out, std::uint64_t v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.append(buf, 8);
}

std::string to_csv(const Matrix& M, CsvHeader header) {
  std::string out;
  out.reserve(static_cast<std::size_t>(M.size()) * 12 + 64);
  const char* prefix = header == CsvHeader::CoordinateNames ? "x" : "";
  for (Index j = 0; j < M.cols(); ++j) {
    if (j) out += ',';
    out += prefix;
    out += std::to_string(j + 1);
  }
  out += '\n';
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j) out += ',';
      out += format_double(M(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string to_binary(const Matrix& M) {
  std::string out;
  out.reserve(16 + static_cast<std::size_t>(M.size()) * 8);
  out.append(kMagic, 4);
  append_u64(out, static_cast<std::uint64_t>(M.rows()));
  append_u64(out, static_cast<std::uint64_t>(M.cols()));
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      const double v = M(i, j);
      char buf[8];
      std::memcpy(buf, &v, 8);
      out.append(buf, 8);
    }
  }
  return out;
}

Matrix parse_csv(const std::string& text, const fs::path& path) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string_view line(text.data() + pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line_no == 1) continue;  // header
    if (line.empty()) continue;

    std::vector<double> row;
    std::size_t field_start = 0;
    while (field_start <= line.size()) {
      std::size_t comma = line.find(',', field_start);
      if (comma == std::string_view::npos) comma = line.size();
      const std::string_view field = line.substr(field_start, comma - field_start);
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || ptr != field.data() + field.size()) {
        io_fail(path, "invalid numeric field '" + std::string(field) +
                          "' on line " + std::to_string(line_no));
      }
      row.push_back(v);
      if (comma == line.size()) break;
      field_start = comma + 1;
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      io_fail(path, "ragged CSV: line " + std::to_string(line_no) + " has " +
                        std::to_string(row.size()) + " fields, expected " +
                        std::to_string(width));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || width == 0) io_fail(path, "CSV contains no data rows");
  Matrix M(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      M(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return M;
}

Matrix parse_binary(const std::string& bytes, const fs::path& path) {
  if (bytes.size() < 20) io_fail(path, "binary matrix file truncated");
  std::uint64_t rows = 0, cols = 0;
  std::memcpy(&rows, bytes.data() + 4, 8);
  std::memcpy(&cols, bytes.data() + 12, 8);
  if (rows == 0 || cols == 0) io_fail(path, "binary matrix has zero dimension");
  if (rows > (1u << 30) || cols > (1u << 30) ||
      rows * cols > (std::uint64_t{1} << 32)) {
    io_fail(path, "binary matrix dimensions implausibly large");
  }
  if (bytes.size() != 20 + rows * cols * 8) {
    io_fail(path, "binary matrix payload size mismatch (" +
                      std::to_string(bytes.size()) + " bytes for " +
                      std::to_string(rows) + "x" + std::to_string(cols) + ")");
  }
  Matrix M(static_cast<Index>(rows), static_cast<Index>(cols));
  const char* p = bytes.data() + 20;
  for (std::uint64_t i = 0; i < rows; ++i) {
    for (std::uint64_t j = 0; j < cols; ++j) {
      double v;
      std::memcpy(&v, p, 8);
      p += 8;
      M(static_cast<Index>(i), static_cast<Index>(j)) = v;
    }
  }
  return M;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail(path, "cannot open file for reading");
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) io_fail(path, "read failure");
  return content;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw IntegrityError("format_double: buffer overflow");
  return std::string(buf, ptr);
}

void atomic_write_text(const fs::path& path, const std::string& content) {
  fs::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  std::error_code ec;
  if (!fs::exists(dir, ec)) io_fail(dir, "target directory does not exist");

  const fs::path tmp = path.string() + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) io_fail(tmp, "cannot open temporary file for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code rm;
      fs::remove(tmp, rm);
      io_fail(tmp, "write failure");
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code rm;
    fs::remove(tmp, rm);
    io_fail(path, "rename failed (" + ec.message() + ")");
  }
}

void write_matrix(const Matrix& M, const fs::path& path, MatrixFormat format,
                  CsvHeader header) {
  if (M.rows() < 1 || M.cols() < 1) {
    throw DomainError("write_matrix: matrix must be nonempty");
  }
  atomic_write_text(path,
                    format == MatrixFormat::Csv ? to_csv(M, header) : to_binary(M));
}

Matrix read_matrix(const fs::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) {
    return parse_binary(bytes, path);
  }
  return parse_csv(bytes, path);
}

}  // namespace corrspec
