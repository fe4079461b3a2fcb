#include "gwalsh/matrix_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gwalsh {

using nlohmann::json;

namespace {

Complex parse_entry(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw Error(ErrorCode::ParseError, "matrix entry must be a number or [re, im]");
}

MatrixFile parse_matrix_doc(const json& doc) {
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw Error(ErrorCode::ParseError, "expected an object with an \"entries\" array");

  const json& rows = doc.at("entries");
  MatrixFile out;
  out.n = doc.contains("n") ? doc["n"].get<int>() : static_cast<int>(rows.size());
  if (doc.contains("tol")) out.tol = doc["tol"].get<double>();
  if (static_cast<int>(rows.size()) != out.n)
    throw Error(ErrorCode::BadDimension, "\"n\" does not match the number of rows");

  out.entries.resize(out.n, out.n);
  for (int i = 0; i < out.n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != out.n)
      throw Error(ErrorCode::BadDimension, "row " + std::to_string(i) + " has wrong length");
    for (int j = 0; j < out.n; ++j) out.entries(i, j) = parse_entry(rows[i][j]);
  }
  return out;
}

}  // namespace

MatrixFile parse_matrix_json(const std::string& text) {
  try {
    return parse_matrix_doc(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string matrix_to_json(const WalshMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) {
      const Complex v = m(i, j);
      if (m.is_real())
        row.push_back(v.real());
      else
        row.push_back(json::array({v.real(), v.imag()}));
    }
    rows.push_back(std::move(row));
  }
  json doc;
  doc["n"] = m.n();
  doc["tol"] = m.tol();
  doc["entries"] = std::move(rows);
  return doc.dump(2) + "\n";
}

WalshMatrix matrix_from_json(const std::string& text) {
  const MatrixFile f = parse_matrix_json(text);
  return WalshMatrix::validate(f.entries, std::max(kExternalTol, f.tol));
}

WalshMatrix load_matrix(const std::filesystem::path& path) {
  return matrix_from_json(read_text_file(path));
}

void save_matrix(const WalshMatrix& m, const std::filesystem::path& path) {
  write_text_file(path, matrix_to_json(m));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + path.string());
}

}  // namespace gwalsh
