// Python bindings. Numbers cross the boundary as decimal strings so that
// arbitrary-precision values survive; psatz/__init__.py converts them to
// int and fractions.Fraction.

#include "psatz/certificate.hpp"
#include "psatz/driver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace psatz;

namespace {

using StringMatrix = std::vector<std::vector<std::string>>;

QMatrix to_qmatrix(const StringMatrix& rows) {
  QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = parse_rational(rows[i][j]);
  }
  return m;
}

std::vector<std::string> to_strings(std::span<const Rational> v) {
  std::vector<std::string> out;
  for (const Rational& x : v) out.push_back(x.get_str());
  return out;
}

py::dict prove_text(const std::string& problem, unsigned max_degree, bool use_products, bool simplify,
                    std::optional<QuotientDegrees> degrees, bool verbose) {
  const ProblemFile pf = parse_problem(problem);
  SearchConfig config;
  config.max_degree = max_degree;
  config.use_products = use_products;
  config.simplify = simplify;
  if (verbose) config.log = [](const std::string& m) { py::print(m); };
  auto run = [&] { return pf.goal == GoalKind::Nonneg ? prove_nonneg(pf, config, degrees) : prove_unsat(pf, config); };
  ProofResult r;
  if (verbose) {
    r = run();  // log calls back into Python, so keep the GIL
  } else {
    py::gil_scoped_release release;
    r = run();
  }
  py::dict out;
  if (const auto* w = std::get_if<PsatzWitness>(&r)) {
    out["found"] = true;
    out["certificate"] = write_certificate({pf, *w});
  } else {
    const auto& f = std::get<SearchFailure>(r);
    out["found"] = false;
    out["exit"] = to_string(f.exit);
    out["reason"] = f.reason;
  }
  return out;
}

std::pair<bool, std::string> check_text(const std::string& certificate) {
  const VerifyResult v = check_certificate(parse_certificate(certificate));
  return {v.accepted, v.reason};
}

StringMatrix lll_strings(const StringMatrix& rows, const std::string& delta) {
  IntMatrix basis;
  for (const auto& r : rows) {
    IntVector v;
    for (const auto& x : r) v.emplace_back(x);
    basis.push_back(std::move(v));
  }
  const IntMatrix reduced = lll_reduce(std::move(basis), parse_rational(delta));
  StringMatrix out;
  for (const auto& r : reduced) {
    std::vector<std::string> s;
    for (const Integer& x : r) s.push_back(x.get_str());
    out.push_back(std::move(s));
  }
  return out;
}

// (coefficient, vector) pairs, or None when the matrix is not PSD.
std::optional<std::vector<std::pair<std::string, std::vector<std::string>>>> gaussian_strings(const StringMatrix& rows) {
  const auto r = gaussian_decompose(to_qmatrix(rows));
  if (!std::holds_alternative<SosDecomposition>(r)) return std::nullopt;
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const SosTerm& t : std::get<SosDecomposition>(r).terms) out.emplace_back(t.coefficient.get_str(), to_strings(t.vector));
  return out;
}

}  // namespace

PYBIND11_MODULE(_psatz, m) {
  m.doc() = "Exact rational SOS and Positivstellensatz witnesses.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def("prove", &prove_text, py::arg("problem"), py::arg("max_degree") = 0u, py::arg("use_products") = false,
        py::arg("simplify") = false, py::arg("degrees") = std::nullopt, py::arg("verbose") = false,
        "Search for a witness for a problem given in the text format. Returns a dict with 'found' and either "
        "'certificate' or 'exit'/'reason'.");
  m.def("check", &check_text, py::arg("certificate"), "Exact check of certificate text: (accepted, reason).");
  m.def("lll_reduce", &lll_strings, py::arg("basis"), py::arg("delta") = kDefaultLllDelta.get_str(),
        "LLL reduction of integer row vectors given as decimal strings.");
  m.def("gaussian_decompose", &gaussian_strings, py::arg("matrix"),
        "Exact decomposition sum c_i v_i^T v_i of a symmetric rational matrix, or None if it is not PSD.");
  m.def("is_psd", [](const StringMatrix& rows) { return psd_check_charpoly(to_qmatrix(rows)); }, py::arg("matrix"),
        "Exact PSD test through the characteristic polynomial.");
}
