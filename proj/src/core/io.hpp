#pragma once

#include <filesystem>
#include <string>

#include "core/types.hpp"

namespace corrspec {

// Matrix serialization.
//
// Two interchangeable on-disk formats:
//
//  * CSV: one header line, then one line per row with comma-separated
//    values.  Matrix files use bare column indices ("1,2,...,cols") as the
//    header; embedding files use coordinate names ("x1,...,xd").  Values are
//    written with the shortest representation that round-trips exactly.
//
//  * Binary "CNM1": the 4 magic bytes 'C' 'N' 'M' '1', then row and column
//    counts as little-endian unsigned 64-bit integers, then the payload as
//    row-major little-endian IEEE-754 doubles.
//
// Readers detect the format from the leading bytes, not the file name.
// All writers are atomic: content goes to a temporary file in the target
// directory which is then renamed over the destination, so a crash cannot
// leave a partially written file behind.

enum class MatrixFormat { Csv, Binary };
enum class CsvHeader { ColumnIndices, CoordinateNames };

/// Shortest decimal form of `v` that parses back to exactly the same bits
/// (also used by the CSV writers).
std::string format_double(double v);

/// Writes `content` to `path` atomically (temporary file + rename).
void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content);

/// Serializes a matrix.  CSV output uses the requested header style.
void write_matrix(const Matrix& M, const std::filesystem::path& path,
                  MatrixFormat format,
                  CsvHeader header = CsvHeader::ColumnIndices);

/// Reads a matrix in either format, sniffing the leading bytes.
Matrix read_matrix(const std::filesystem::path& path);

}  // namespace corrspec
