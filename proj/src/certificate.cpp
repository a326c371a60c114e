#include "psatz/certificate.hpp"

#include <cctype>
#include <sstream>

namespace psatz {

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

Rational rational_at(std::string_view tok, int lineno) {
  try {
    return parse_rational(tok);
  } catch (const std::invalid_argument& e) {
    throw InputError(lineno, e.what());
  }
}

Monomial monomial_at(std::string_view tok, const VariableList& vars, int lineno) {
  Polynomial p(vars);
  try {
    p = Polynomial::parse(tok, vars);
  } catch (const std::invalid_argument& e) {
    throw InputError(lineno, e.what());
  }
  if (p.terms().size() != 1 || p.terms().begin()->second != 1) {
    throw InputError(lineno, "basis entry '" + std::string(tok) + "' is not a monomial");
  }
  return p.terms().begin()->first;
}

}  // namespace

std::string write_certificate(const Certificate& cert) {
  std::ostringstream out;
  out << "psatz-certificate " << kCertificateVersion << "\n";
  out << format_problem(cert.problem);
  for (const WitnessPart& part : cert.witness.parts) {
    out << "part " << part.label << "\n";
    out << "polynomial " << part.polynomial.to_string() << "\n";
    out << "basis";
    for (const Monomial& m : part.basis) out << ' ' << m.to_string(cert.problem.vars);
    out << "\n";
    for (const SosTerm& t : part.multiplier.terms) {
      out << "square " << to_string(t.coefficient);
      for (const Rational& q : t.vector) out << ' ' << to_string(q);
      out << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

Certificate parse_certificate(std::string_view text) {
  Certificate cert;
  detail::ProblemParseState state;
  bool seen_header = false;
  bool in_part = false;
  bool part_has_basis = false;
  bool part_has_poly = false;
  WitnessPart current;
  int lineno = 0;
  std::size_t start = 0;

  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const std::string_view raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++lineno;
    const std::string_view line = detail::trim(detail::strip_comment(raw));
    if (end == std::string_view::npos) {
      start = text.size() + 1;
    } else {
      start = end + 1;
    }
    if (line.empty()) continue;
    const auto toks = split_ws(line);
    const std::string_view kw = toks.front();

    if (!seen_header) {
      if (kw != "psatz-certificate" || toks.size() != 2) throw InputError(lineno, "missing 'psatz-certificate' header");
      if (toks[1] != std::to_string(kCertificateVersion)) {
        throw InputError(lineno, "unsupported certificate version " + std::string(toks[1]));
      }
      seen_header = true;
      continue;
    }

    if (!in_part) {
      if (kw == "part") {
        if (toks.size() != 2) throw InputError(lineno, "expected 'part <label>'");
        detail::finish_problem(state, lineno);
        current = WitnessPart{std::string(toks[1]), Polynomial(state.problem.vars), {}, {}};
        in_part = true;
        part_has_basis = part_has_poly = false;
        continue;
      }
      if (!cert.witness.parts.empty()) throw InputError(lineno, "problem statements must precede all parts");
      if (!detail::apply_problem_line(state, line, lineno)) {
        throw InputError(lineno, "unknown statement '" + std::string(kw) + "'");
      }
      continue;
    }

    const VariableList& vars = state.problem.vars;
    if (kw == "polynomial") {
      try {
        current.polynomial = Polynomial::parse(detail::trim(line.substr(kw.size())), vars);
      } catch (const std::invalid_argument& e) {
        throw InputError(lineno, e.what());
      }
      part_has_poly = true;
    } else if (kw == "basis") {
      if (part_has_basis) throw InputError(lineno, "duplicate basis line");
      for (std::size_t i = 1; i < toks.size(); ++i) current.basis.push_back(monomial_at(toks[i], vars, lineno));
      part_has_basis = true;
    } else if (kw == "square") {
      if (!part_has_basis) throw InputError(lineno, "square before basis");
      if (toks.size() < 2) throw InputError(lineno, "square needs a coefficient");
      SosTerm t;
      t.coefficient = rational_at(toks[1], lineno);
      for (std::size_t i = 2; i < toks.size(); ++i) t.vector.push_back(rational_at(toks[i], lineno));
      current.multiplier.terms.push_back(std::move(t));
    } else if (kw == "end") {
      if (!part_has_poly || !part_has_basis) throw InputError(lineno, "part needs polynomial and basis lines");
      cert.witness.parts.push_back(std::move(current));
      current = WitnessPart{};
      in_part = false;
    } else {
      throw InputError(lineno, "unknown part statement '" + std::string(kw) + "'");
    }
  }
  if (!seen_header) throw InputError(lineno, "empty certificate");
  if (in_part) throw InputError(lineno, "unterminated part");
  detail::finish_problem(state, lineno);
  cert.problem = state.problem;
  cert.witness.kind = cert.problem.goal;
  cert.witness.vars = cert.problem.vars;
  return cert;
}

}  // namespace psatz
