#pragma once

#include <filesystem>
#include <string>

#include "gwalsh/matrix.hpp"

namespace gwalsh {

// JSON matrix file:
//   {"n": 3, "tol": 1e-10, "entries": [[0.577..., ...], [[re, im], ...], ...]}
// Rows are row-major; a bare number stands for a real entry. Numbers are
// written in shortest round-trip form, so parse(write(A)) is bit-exact.

struct MatrixFile {
  int n = 0;
  double tol = kExternalTol;
  ComplexMatrix entries;
};

MatrixFile parse_matrix_json(const std::string& text);
std::string matrix_to_json(const WalshMatrix& m);

/// Parses and validates. The tolerance is the larger of kExternalTol and the
/// file's own "tol".
WalshMatrix matrix_from_json(const std::string& text);

WalshMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const WalshMatrix& m, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gwalsh
