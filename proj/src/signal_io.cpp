#include "gwalsh/signal_io.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>
#include <vector>

#include "gwalsh/basis.hpp"

namespace gwalsh {

namespace {

struct Table {
  int base = 0;
  int q = 0;
  std::vector<Complex> values;
};

std::string to_csv(std::string_view kind, int base, int q, const std::vector<Complex>& values,
                   int precision) {
  bool real = true;
  for (const Complex& v : values)
    if (v.imag() != 0.0) real = false;

  std::string out = "# gwalsh " + std::string(kind) + " N=" + std::to_string(base) +
                    " q=" + std::to_string(q) + "\n";
  for (const Complex& v : values) {
    out += format_number(v.real(), precision);
    if (!real) {
      out += ',';
      out += format_number(v.imag(), precision);
    }
    out += '\n';
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end || field.empty())
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  return v;
}

int parse_header_int(std::string_view header, std::string_view key) {
  const auto pos = header.find(key);
  if (pos == std::string_view::npos)
    throw Error(ErrorCode::ParseError, "header lacks " + std::string(key));
  std::string_view rest = header.substr(pos + key.size());
  int v = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (ec != std::errc() || ptr == rest.data())
    throw Error(ErrorCode::ParseError, "bad value for " + std::string(key));
  return v;
}

Table from_csv(std::string_view text, std::string_view kind) {
  Table t;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;

    if (!header_seen) {
      const std::string expected = "# gwalsh " + std::string(kind);
      if (line.substr(0, expected.size()) != expected)
        throw Error(ErrorCode::ParseError, "expected header '" + expected + " N=<n> q=<q>'");
      t.base = parse_header_int(line, "N=");
      t.q = parse_header_int(line, "q=");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      t.values.emplace_back(parse_double(line, line_no), 0.0);
    } else {
      std::string_view im = line.substr(comma + 1);
      if (im.find(',') != std::string_view::npos)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": too many columns");
      t.values.emplace_back(parse_double(line.substr(0, comma), line_no),
                            parse_double(im, line_no));
    }
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "empty file");
  return t;
}

}  // namespace

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string signal_to_csv(const Signal& s, int precision) {
  return to_csv("signal", s.base(), s.q(), s.values(), precision);
}

std::string coeffs_to_csv(const CoefficientVector& c, int precision) {
  return to_csv("coeffs", c.base(), c.q(), c.coeffs(), precision);
}

Signal signal_from_csv(std::string_view text) {
  Table t = from_csv(text, "signal");
  return {t.base, t.q, std::move(t.values)};
}

CoefficientVector coeffs_from_csv(std::string_view text) {
  Table t = from_csv(text, "coeffs");
  return {t.base, t.q, std::move(t.values)};
}

Signal signal_from_digits(std::string_view cells, int base) {
  if (base < 2) throw Error(ErrorCode::InvalidArgument, "base must be >= 2");
  std::vector<Complex> values;
  values.reserve(cells.size());
  for (char ch : cells) {
    if (ch < '0' || ch > '9')
      throw Error(ErrorCode::ParseError, std::string("non-digit '") + ch + "' in inline signal");
    values.emplace_back(static_cast<double>(ch - '0'), 0.0);
  }
  int q = 0;
  std::uint64_t length = 1;
  while (length < values.size()) {
    length *= static_cast<std::uint64_t>(base);
    ++q;
  }
  if (length != values.size())
    throw Error(ErrorCode::BadLength, std::to_string(values.size()) + " cells is not a power of " +
                                          std::to_string(base));
  return {base, q, std::move(values)};
}

}  // namespace gwalsh
