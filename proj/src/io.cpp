#include "trimani/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace trimani {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_uint(std::string_view s, std::uint64_t& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Complex parse_facet_text(std::string_view text) {
  std::vector<Facet> facets;
  bool have_header = false;
  std::uint64_t declared_n = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = tokens(line);
    if (tok.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    if (!have_header) {
      if (tok.size() != 2 || tok[0] != "d=3" || tok[1].substr(0, 2) != "n=" ||
          !parse_uint(tok[1].substr(2), declared_n)) {
        parse_error(line_no, "expected header 'd=3 n=<f0>'");
      }
      have_header = true;
      continue;
    }
    if (tok.size() != 4) parse_error(line_no, "expected 4 vertex labels");
    Facet f{};
    for (int i = 0; i < 4; ++i) {
      std::uint64_t v = 0;
      if (!parse_uint(tok[i], v) || v == 0 || v > declared_n) {
        parse_error(line_no, "label '" + std::string(tok[i]) + "' outside 1.." + std::to_string(declared_n));
      }
      f[i] = static_cast<Vertex>(v);
    }
    facets.push_back(f);
    if (nl == text.size()) break;
  }
  if (!have_header) parse_error(line_no, "missing header 'd=3 n=<f0>'");
  Complex k = build_complex(facets);
  if (k.vertex_count() != declared_n) {
    throw Error(Errc::ParseError, "header declares n=" + std::to_string(declared_n) + " but " +
                                      std::to_string(k.vertex_count()) + " labels are used");
  }
  return k;
}

Complex read_facet_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_facet_text(ss.str());
}

std::string format_facets(const Complex& k) {
  std::ostringstream out;
  write_facets(out, k);
  return out.str();
}

void write_facets(std::ostream& out, const Complex& k) {
  out << "d=3 n=" << k.vertex_count() << '\n';
  for (const auto& f : k.facets()) out << f[0] << ' ' << f[1] << ' ' << f[2] << ' ' << f[3] << '\n';
}

void write_facet_file(const std::filesystem::path& path, const Complex& k) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path.string());
  write_facets(out, k);
}

}  // namespace trimani
