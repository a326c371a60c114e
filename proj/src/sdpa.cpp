#include "psatz/sdpa.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace psatz {

std::string format_sdpa_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string export_sdpa(const SdpSearchSpace& space) {
  std::ostringstream out;
  const auto& blocks = space.blocks;
  out << space.dimension() << "\n" << blocks.num_blocks() << "\n";
  for (std::size_t b = 0; b < blocks.num_blocks(); ++b) out << (b ? " " : "") << blocks.sizes[b];
  out << "\n";
  for (std::size_t i = 0; i < space.dimension(); ++i) out << (i ? " " : "") << "0.0";
  out << "\n";
  auto emit = [&](std::size_t matno, std::span<const Rational> packed, bool negate) {
    for (std::size_t b = 0; b < blocks.num_blocks(); ++b) {
      for (std::size_t i = 0; i < blocks.sizes[b]; ++i) {
        for (std::size_t j = i; j < blocks.sizes[b]; ++j) {
          const Rational& q = packed[blocks.index(b, i, j)];
          if (sgn(q) == 0) continue;
          const double v = to_double(q);
          out << matno << ' ' << b + 1 << ' ' << i + 1 << ' ' << j + 1 << ' ' << format_sdpa_double(negate ? -v : v)
              << "\n";
        }
      }
    }
  };
  emit(0, space.offset, true);
  for (std::size_t i = 0; i < space.dimension(); ++i) emit(i + 1, space.basis[i], false);
  return out.str();
}

namespace {

std::string normalize_separators(std::string_view text) {
  std::string out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header_done = false;
  int counts = 0;  // the m and nblocks lines may carry trailing text such as "=mdim"
  while (std::getline(in, line)) {
    if (!header_done && !line.empty() && (line[0] == '"' || line[0] == '*')) continue;
    header_done = true;
    if (counts < 2) {
      std::istringstream first(line);
      std::string tok;
      first >> tok;
      line = tok;
      ++counts;
    }
    for (char& c : line) {
      if (c == '{' || c == '}' || c == '(' || c == ')' || c == ',') c = ' ';
    }
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

SdpaProblem parse_sdpa(std::string_view text) {
  std::istringstream in(normalize_separators(text));
  SdpaProblem p;
  long nblocks = 0;
  if (!(in >> p.m >> nblocks) || nblocks < 0) throw std::runtime_error("SDPA: bad header");
  for (long b = 0; b < nblocks; ++b) {
    long s = 0;
    if (!(in >> s)) throw std::runtime_error("SDPA: missing block size");
    p.block_sizes.push_back(s);
  }
  for (std::size_t i = 0; i < p.m; ++i) {
    double c = 0.0;
    if (!(in >> c)) throw std::runtime_error("SDPA: missing objective entry");
    p.objective.push_back(c);
  }
  SdpaEntry e;
  while (in >> e.matno >> e.block >> e.i >> e.j >> e.value) {
    if (e.matno > p.m || e.block == 0 || e.block > p.block_sizes.size()) throw std::runtime_error("SDPA: entry out of range");
    p.entries.push_back(e);
  }
  if (!in.eof()) throw std::runtime_error("SDPA: malformed entry line");
  return p;
}

std::vector<double> read_sdpa_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read solution file " + path);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    double x = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw std::runtime_error("solution file " + path + ": not a number: " + tok);
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace psatz
