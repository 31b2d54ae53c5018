#pragma once

// Reader and writer for the "grothmat v1" text format:
//
//   grothmat v1
//   kind: sym|rect
//   field: real|complex
//   size: n            (or "size: m n" for rect)
//   <entries, row-major, whitespace separated; complex as a+bi / a-bi>
//
// Blank lines and lines starting with '#' are ignored.

#include "grothnorm/matrix.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace grothnorm {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

using AnyMatrix = std::variant<SymMatrix, RectMatrix>;

namespace detail {

inline std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Accepts "a", "a+bi", "a-bi", "bi", "+i", "-i".
inline std::optional<Complex> parse_scalar(std::string_view tok, bool allow_complex) {
  if (tok.empty()) return std::nullopt;
  if (tok.back() != 'i') {
    auto v = parse_double(tok);
    if (!v) return std::nullopt;
    return Complex(*v, 0.0);
  }
  if (!allow_complex) return std::nullopt;
  std::string_view body = tok.substr(0, tok.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    const char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](std::string_view s) -> std::optional<double> {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (split == std::string_view::npos) {
    auto im = imag_of(body);
    if (!im) return std::nullopt;
    return Complex(0.0, *im);
  }
  auto re = parse_double(body.substr(0, split));
  auto im = imag_of(body.substr(split));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_scalar(Complex z, Field field) {
  if (field == Field::Real) return format_real(z.real());
  std::string s = format_real(z.real());
  const bool neg = std::signbit(z.imag());
  s += neg ? '-' : '+';
  s += format_real(std::abs(z.imag()));
  s += 'i';
  return s;
}

}  // namespace detail

/// Parses a grothmat v1 stream. Symmetric files must be Hermitian to within
/// 1e-12 (relative to the largest entry) and have a real diagonal; the result
/// stores the exact Hermitian part.
inline AnyMatrix parse_matrix(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_header = [&](std::string_view key) -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      std::string t = detail::trim(line);
      if (t.empty() || t[0] == '#') continue;
      if (key.empty()) return t;
      const std::string prefix = std::string(key) + ":";
      if (t.rfind(prefix, 0) != 0) throw ParseError(lineno, "expected '" + prefix + "'");
      return detail::trim(std::string_view(t).substr(prefix.size()));
    }
    throw ParseError(lineno, "unexpected end of file reading header");
  };

  if (next_header("") != "grothmat v1") throw ParseError(lineno, "missing 'grothmat v1' magic line");
  const std::string kind = next_header("kind");
  if (kind != "sym" && kind != "rect") throw ParseError(lineno, "kind must be 'sym' or 'rect'");
  const std::string field_s = next_header("field");
  if (field_s != "real" && field_s != "complex") throw ParseError(lineno, "field must be 'real' or 'complex'");
  const Field field = field_from_string(field_s);
  const std::string size_s = next_header("size");
  const int size_line = lineno;

  std::istringstream ss(size_s);
  long m = 0;
  long n = 0;
  if (!(ss >> m) || m <= 0) throw ParseError(size_line, "bad size");
  if (kind == "rect") {
    if (!(ss >> n) || n <= 0) throw ParseError(size_line, "rect size needs 'm n'");
  } else {
    n = m;
  }
  std::string extra;
  if (ss >> extra) throw ParseError(size_line, "trailing tokens in size line");

  Eigen::MatrixXcd a(m, n);
  long count = 0;
  const long total = m * n;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string tok;
    while (ls >> tok) {
      if (count >= total) throw ParseError(lineno, "too many entries");
      auto z = detail::parse_scalar(tok, field == Field::Complex);
      if (!z) throw ParseError(lineno, "cannot parse entry '" + tok + "'");
      a(count / n, count % n) = *z;
      ++count;
    }
  }
  if (count != total)
    throw ParseError(lineno, "expected " + std::to_string(total) + " entries, found " + std::to_string(count));

  if (kind == "rect") return field == Field::Real ? RectMatrix::real(a.real()) : RectMatrix::complex(a);

  for (long i = 0; i < m; ++i)
    if (a(i, i).imag() != 0.0) throw ParseError(lineno, "non-real diagonal entry in symmetric file");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (long i = 0; i < m; ++i)
    for (long j = i + 1; j < m; ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > 1e-12 * scale)
        throw ParseError(lineno, "symmetry violation at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  return field == Field::Real ? SymMatrix::real(a.real()) : SymMatrix::complex(a);
}

inline AnyMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_matrix(in);
}

inline void write_matrix(std::ostream& out, const SymMatrix& a) {
  out << "grothmat v1\nkind: sym\nfield: " << to_string(a.field()) << "\nsize: " << a.size() << "\n";
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) out << (j ? " " : "") << detail::format_scalar(a(i, j), a.field());
    out << "\n";
  }
}

inline void write_matrix(std::ostream& out, const RectMatrix& b) {
  out << "grothmat v1\nkind: rect\nfield: " << to_string(b.field()) << "\nsize: " << b.rows() << " " << b.cols()
      << "\n";
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) out << (j ? " " : "") << detail::format_scalar(b(i, j), b.field());
    out << "\n";
  }
}

inline std::string to_grothmat(const AnyMatrix& m) {
  std::ostringstream os;
  std::visit([&](const auto& x) { write_matrix(os, x); }, m);
  return os.str();
}

}  // namespace grothnorm
