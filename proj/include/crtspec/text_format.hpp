#pragma once

// Line-oriented text formats:
//
//   field      GF2m m=<int> mod=0x<hex>                 (one per line)
//   sequence   period=<N>
//              <N ASCII '0'/'1'>
//   spectrum   N=<int> field=GF2m(<m>,0x<hex>) root=g^<e>
//              <k> <d|Z>                                (one per line)
//
// In a spectrum file, g is the field's designated generator and indices
// that are not listed are ZERO. Parse errors carry 1-based line/column.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "crtspec/error.hpp"
#include "crtspec/field.hpp"
#include "crtspec/sequence.hpp"
#include "crtspec/spectral.hpp"

namespace crtspec::text {

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

inline bool blank(std::string_view s) { return s.find_first_not_of(" \t") == std::string_view::npos; }

// Parses an unsigned decimal at `col` (0-based) and advances it.
inline std::uint64_t read_uint(std::string_view line, std::size_t& col, std::size_t lineno, int base = 10) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(line.data() + col, line.data() + line.size(), v, base);
  if (ec != std::errc() || ptr == line.data() + col)
    throw ParseError(lineno, col + 1, base == 16 ? "expected a hex number" : "expected an unsigned integer");
  col = static_cast<std::size_t>(ptr - line.data());
  return v;
}

inline void expect(std::string_view line, std::size_t& col, std::string_view token, std::size_t lineno) {
  if (line.substr(col, token.size()) != token) throw ParseError(lineno, col + 1, "expected '" + std::string(token) + "'");
  col += token.size();
}

inline void skip_spaces(std::string_view line, std::size_t& col) {
  while (col < line.size() && (line[col] == ' ' || line[col] == '\t')) ++col;
}

inline void expect_end(std::string_view line, std::size_t col, std::size_t lineno) {
  skip_spaces(line, col);
  if (col != line.size()) throw ParseError(lineno, col + 1, "unexpected trailing text");
}

inline FieldSpec make_field(std::uint64_t m, std::uint64_t mod, std::size_t lineno, std::size_t col) {
  try {
    return build_field(static_cast<unsigned>(m), Poly2(mod));
  } catch (const Error& e) {
    throw ParseError(lineno, col, e.what());
  }
}

}  // namespace detail

inline std::string format_field(const FieldSpec& f) { return f.to_string(); }

/// One `GF2m m=<int> mod=0x<hex>` line.
inline FieldSpec parse_field_line(std::string_view line, std::size_t lineno = 1) {
  std::size_t col = 0;
  detail::skip_spaces(line, col);
  detail::expect(line, col, "GF2m", lineno);
  detail::skip_spaces(line, col);
  detail::expect(line, col, "m=", lineno);
  std::size_t mcol = col + 1;
  auto m = detail::read_uint(line, col, lineno);
  detail::skip_spaces(line, col);
  detail::expect(line, col, "mod=0x", lineno);
  auto mod = detail::read_uint(line, col, lineno, 16);
  detail::expect_end(line, col, lineno);
  return detail::make_field(m, mod, lineno, mcol);
}

/// Degree -> modulus table from field lines; blank lines and '#' comments
/// are skipped.
inline std::map<unsigned, Poly2> parse_polynomial_table(std::string_view text) {
  std::map<unsigned, Poly2> table;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::blank(lines[i]) || lines[i].front() == '#') continue;
    auto f = parse_field_line(lines[i], i + 1);
    table[f.m()] = f.modulus();
  }
  return table;
}

inline std::string format_sequence(const BitSequence& s) {
  return "period=" + std::to_string(s.period()) + "\n" + s.to_string() + "\n";
}

inline BitSequence parse_sequence(std::string_view text) {
  auto lines = detail::split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && detail::blank(lines[i])) ++i;
  if (i == lines.size()) throw ParseError(1, 1, "empty sequence file");
  std::size_t col = 0;
  const std::size_t header = i + 1;
  detail::expect(lines[i], col, "period=", header);
  auto N = detail::read_uint(lines[i], col, header);
  detail::expect_end(lines[i], col, header);
  if (N == 0) throw ParseError(header, 8, "period must be at least 1");
  if (++i >= lines.size()) throw ParseError(header + 1, 1, "missing bit line");
  const std::string& bits = lines[i];
  for (std::size_t c = 0; c < bits.size(); ++c)
    if (bits[c] != '0' && bits[c] != '1') throw ParseError(i + 1, c + 1, "expected '0' or '1'");
  if (bits.size() != N)
    throw ParseError(i + 1, bits.size() + 1,
                     "expected " + std::to_string(N) + " bits, found " + std::to_string(bits.size()));
  for (std::size_t j = i + 1; j < lines.size(); ++j)
    if (!detail::blank(lines[j])) throw ParseError(j + 1, 1, "unexpected content after the bit line");
  return BitSequence::parse(bits);
}

/// Exponent e with root = generator^e.
inline std::uint64_t root_exponent(const Spectrum& S) { return discrete_log(S.root(), S.field().generator()); }

inline std::string spectrum_header(const Spectrum& S) {
  return "N=" + std::to_string(S.period()) + " field=GF2m(" + std::to_string(S.field().m()) + "," +
         S.field().modulus().to_hex() + ") root=g^" + std::to_string(root_exponent(S));
}

/// All N lines, or only the nonzero ones when `support_only`.
inline std::string format_spectrum(const Spectrum& S, bool support_only = false) {
  std::ostringstream os;
  os << spectrum_header(S) << "\n";
  for (std::uint64_t k = 0; k < S.period(); ++k) {
    if (support_only && S[k].is_zero()) continue;
    os << k << " " << S[k].to_string() << "\n";
  }
  return os.str();
}

inline Spectrum parse_spectrum(std::string_view text) {
  auto lines = detail::split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && detail::blank(lines[i])) ++i;
  if (i == lines.size()) throw ParseError(1, 1, "empty spectrum file");
  const std::string& h = lines[i];
  const std::size_t hl = i + 1;
  std::size_t col = 0;
  detail::expect(h, col, "N=", hl);
  auto N = detail::read_uint(h, col, hl);
  detail::skip_spaces(h, col);
  detail::expect(h, col, "field=GF2m(", hl);
  std::size_t mcol = col + 1;
  auto m = detail::read_uint(h, col, hl);
  detail::expect(h, col, ",0x", hl);
  auto mod = detail::read_uint(h, col, hl, 16);
  detail::expect(h, col, ")", hl);
  detail::skip_spaces(h, col);
  detail::expect(h, col, "root=g^", hl);
  std::size_t ecol = col + 1;
  auto e = detail::read_uint(h, col, hl);
  detail::expect_end(h, col, hl);

  FieldSpec f = detail::make_field(m, mod, hl, mcol);
  FieldElement root = pow(f.generator(), static_cast<std::int64_t>(e % f.group_order()));
  if (N == 0 || element_order(root) != N)
    throw ParseError(hl, ecol, "root g^" + std::to_string(e) + " does not have order " + std::to_string(N));

  std::vector<LogValue> values(N);
  std::vector<bool> seen(N, false);
  for (++i; i < lines.size(); ++i) {
    const std::string& l = lines[i];
    if (detail::blank(l)) continue;
    col = 0;
    detail::skip_spaces(l, col);
    std::size_t kcol = col + 1;
    auto k = detail::read_uint(l, col, i + 1);
    if (k >= N) throw ParseError(i + 1, kcol, "index outside [0, " + std::to_string(N) + ")");
    if (seen[k]) throw ParseError(i + 1, kcol, "index " + std::to_string(k) + " listed twice");
    seen[k] = true;
    if (col >= l.size() || (l[col] != ' ' && l[col] != '\t')) throw ParseError(i + 1, col + 1, "expected a space");
    detail::skip_spaces(l, col);
    if (col < l.size() && l[col] == 'Z') {
      ++col;
    } else {
      std::size_t dcol = col + 1;
      auto d = detail::read_uint(l, col, i + 1);
      if (d >= N) throw ParseError(i + 1, dcol, "exponent outside [0, " + std::to_string(N) + ")");
      values[k] = LogValue::power(d);
    }
    detail::expect_end(l, col, i + 1);
  }
  return Spectrum(root, std::move(values));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Writes through a temporary sibling file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace crtspec::text
