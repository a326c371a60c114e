#include "psatz/certificate.hpp"
#include "psatz/driver.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace psatz;

namespace {

const char* kQuartic = "vars y\nassume -2 + y^2 >= 0\nassume 1 - y^4 >= 0\ngoal unsat\n";

SearchConfig quiet() { return SearchConfig{}; }

Certificate cert_of(const std::string& problem, const std::string& parts) {
  return parse_certificate("psatz-certificate 1\n" + problem + parts);
}

PsatzWitness witness_of(const ProofResult& r) {
  if (const auto* f = std::get_if<SearchFailure>(&r)) ADD_FAILURE() << to_string(f->exit) << ": " << f->reason;
  if (std::holds_alternative<SearchFailure>(r)) return {};
  return std::get<PsatzWitness>(r);
}

}  // namespace

TEST(Rounding, BestApproximation) {
  EXPECT_EQ(best_rational_approximation(from_double(0.5), 10), Rational(1, 2));
  EXPECT_EQ(best_rational_approximation(from_double(0.333333333), 100), Rational(1, 3));
  EXPECT_EQ(best_rational_approximation(from_double(0.0), 10), 0);
  EXPECT_EQ(best_rational_approximation(from_double(-2.75), 10), Rational(-11, 4));
  // pi with denominator <= 1000 is 355/113.
  EXPECT_EQ(best_rational_approximation(from_double(3.141592653589793), 1000), Rational(355, 113));
  const std::vector<double> y{0.5, -0.2};
  EXPECT_EQ(round_to_rational(y, 10), (RationalVector{Rational(1, 2), Rational(-1, 5)}));
}

// Brute-force oracle: no fraction with a smaller-or-equal denominator is closer.
TEST(Rounding, BestApproximationIsBest) {
  for (double x : {0.1234567, -1.41421356, 2.718281828, 0.999, 7.0 / 13.0}) {
    const Rational exact = from_double(x);
    const Rational best = best_rational_approximation(exact, 60);
    EXPECT_LE(best.get_den(), 60);
    for (long q = 1; q <= 60; ++q) {
      const Integer p = round_half_away(exact * q);
      Rational cand(p, q);
      cand.canonicalize();
      EXPECT_LE(abs(exact - best), abs(exact - cand)) << x << " vs " << cand.get_str();
    }
  }
}

TEST(PsdPoint, DegenerateDiagonal) {
  const SdpSearchSpace s = SdpSearchSpace::from_blocks({QMatrix{{0}}, QMatrix{{0}}}, {{QMatrix{{1}}, QMatrix{{-1}}}});
  auto r = find_rational_psd_point(s, quiet());
  ASSERT_TRUE(std::holds_alternative<PsdPoint>(r));
  const PsdPoint& p = std::get<PsdPoint>(r);
  for (const auto& x : p.packed) EXPECT_EQ(x, 0);
  EXPECT_GE(p.rounds, 1);
  for (std::size_t k = 1; k < p.dimensions.size(); ++k) EXPECT_LT(p.dimensions[k], p.dimensions[k - 1]);
}

TEST(PsdPoint, NoSolution) {
  const SdpSearchSpace s = SdpSearchSpace::from_blocks({QMatrix{{-1}}}, {});
  auto r = find_rational_psd_point(s, quiet());
  ASSERT_TRUE(std::holds_alternative<SearchFailure>(r));
  EXPECT_EQ(std::get<SearchFailure>(r).exit, SearchFailure::Exit::NoNumericSolution);
}

TEST(PsdPoint, QuarticAtBoundTwo) {
  const ProblemFile pf = parse_problem(kQuartic);
  SosProblem sp;
  sp.vars = pf.vars;
  sp.multiplicands = {pf.constraints[0], pf.constraints[1], Polynomial::constant(pf.vars, 1)};
  sp.target = Polynomial::constant(pf.vars, -1);
  sp.bases = select_bases(sp.multiplicands, sp.target, 2, false);
  auto space = build_search_space(sp);
  ASSERT_TRUE(std::holds_alternative<SdpSearchSpace>(space));
  auto r = find_rational_psd_point(std::get<SdpSearchSpace>(space), quiet());
  ASSERT_TRUE(std::holds_alternative<PsdPoint>(r));
  const PsatzWitness w = assemble_witness(pf, sp, {"1", "2", "const"}, std::get<PsdPoint>(r));
  EXPECT_TRUE(verify_witness(w, pf)) << verify_witness(w, pf).reason;
}

TEST(ProveUnsat, Quartic) {
  const ProblemFile pf = parse_problem(kQuartic);
  const auto r = prove_unsat(pf, quiet());
  const PsatzWitness w = witness_of(r);
  EXPECT_TRUE(verify_witness(w, pf));
  for (const auto& part : w.parts)
    for (const auto& m : part.basis) EXPECT_LE(2 * m.degree(), 4u);
}

TEST(ProveUnsat, Linear) {
  const ProblemFile pf = parse_problem("vars x\nassume x >= 0\nassume -x - 1 >= 0\ngoal unsat\n");
  EXPECT_TRUE(verify_witness(witness_of(prove_unsat(pf, quiet())), pf));
}

TEST(ProveUnsat, SatisfiableFails) {
  const ProblemFile pf = parse_problem("vars x\nassume x >= 0\ngoal unsat\n");
  SearchConfig c;
  c.max_degree = 4;
  const auto r = prove_unsat(pf, c);
  ASSERT_TRUE(std::holds_alternative<SearchFailure>(r));
  EXPECT_EQ(std::get<SearchFailure>(r).exit, SearchFailure::Exit::BoundExhausted);
}

TEST(ProveUnsat, NeedsProducts) {
  // x >= 0, y >= 0, -x*y - 1 >= 0: x*y*Q appears only among products.
  const ProblemFile pf = parse_problem("vars x y\nassume x >= 0\nassume y >= 0\nassume -x*y - 1 >= 0\ngoal unsat\n");
  SearchConfig c;
  c.use_products = true;
  EXPECT_TRUE(verify_witness(witness_of(prove_unsat(pf, c)), pf));
}

TEST(ProveNonneg, Square) {
  const ProblemFile pf = parse_problem("vars x\ngoal nonneg x^2\n");
  const PsatzWitness w = witness_of(prove_nonneg(pf, quiet()));
  EXPECT_TRUE(verify_witness(w, pf));
  ASSERT_EQ(w.parts.size(), 2u);
  EXPECT_EQ(w.parts[0].label, "denominator");
  EXPECT_EQ(expand_sos(w.parts[0].multiplier, w.parts[0].basis, pf.vars), Polynomial::constant(pf.vars, 1));
  EXPECT_EQ(expand_sos(w.parts[1].multiplier, w.parts[1].basis, pf.vars), *pf.target);
}

TEST(ProveNonneg, NegativeConstantFails) {
  const ProblemFile pf = parse_problem("vars x\ngoal nonneg -1\n");
  SearchConfig c;
  c.max_degree = 4;
  EXPECT_TRUE(std::holds_alternative<SearchFailure>(prove_nonneg(pf, c)));
}

TEST(ProveNonneg, WithAssumption) {
  const ProblemFile pf = parse_problem("vars x\nassume x >= 0\ngoal nonneg x^3 + x\n");
  EXPECT_TRUE(verify_witness(witness_of(prove_nonneg(pf, quiet())), pf));
}

TEST(ProveNonneg, MotzkinNeedsDenominator) {
  const ProblemFile pf = parse_problem("vars x1 x2 x3\ngoal nonneg x1^6 + x2^4*x3^2 + x2^2*x3^4 - 3*x1^2*x2^2*x3^2\n");
  SearchConfig c;
  const auto plain = prove_nonneg(pf, c, QuotientDegrees{0, 3});
  EXPECT_TRUE(std::holds_alternative<SearchFailure>(plain));
  const PsatzWitness w = witness_of(prove_nonneg(pf, c, QuotientDegrees{1, 4}));
  EXPECT_TRUE(verify_witness(w, pf));
}

// The trailing +1 of the refutation identity is implicit; a "const" part is an
// extra SOS term next to it.
TEST(Verify, KnownQuarticWitnessAccepted) {
  const Certificate c = cert_of(kQuartic,
                                "part 1\npolynomial y^2 - 2\nbasis 1 y\nsquare 2/3 1 0\nsquare 1/3 0 1\nend\n"
                                "part 2\npolynomial 1 - y^4\nbasis 1\nsquare 1/3 1\nend\n");
  EXPECT_TRUE(check_certificate(c)) << check_certificate(c).reason;
}

TEST(Verify, MisprintedQuarticWitnessRejected) {
  const Certificate c = cert_of(kQuartic,
                                "part 1\npolynomial y^2 - 2\nbasis y\nsquare 1 1\nend\n"
                                "part 2\npolynomial 1 - y^4\nbasis 1\nsquare 1 1\nend\n"
                                "part const\npolynomial 1\nbasis y\nsquare 2 1\nend\n");
  const VerifyResult r = check_certificate(c);
  EXPECT_FALSE(r);
  EXPECT_NE(r.reason.find("residual 2"), std::string::npos) << r.reason;
}

TEST(Verify, MotzkinQuotientFixture) {
  std::ifstream in(std::string(PSATZ_TEST_DATA) + "/motzkin_quotient.cert");
  std::stringstream s;
  s << in.rdbuf();
  const Certificate c = parse_certificate(s.str());
  EXPECT_TRUE(check_certificate(c)) << check_certificate(c).reason;
}

TEST(Verify, NonnegNeedsNonzeroDenominator) {
  const Certificate c = cert_of("vars x\ngoal nonneg x^2\n",
                                "part denominator\npolynomial x^2\nbasis 1\nend\n"
                                "part numerator\npolynomial -1\nbasis 1\nend\n");
  const VerifyResult r = check_certificate(c);
  EXPECT_FALSE(r);
  EXPECT_EQ(r.reason, "denominator multiplier is zero");
}

TEST(Verify, WrongPolynomialRejected) {
  const Certificate c = cert_of("vars x\nassume x >= 0\nassume -x - 1 >= 0\ngoal unsat\n",
                                "part 1\npolynomial x + 1\nbasis 1\nsquare 1 1\nend\n"
                                "part 2\npolynomial -x - 1\nbasis 1\nsquare 1 1\nend\n"
                                "part const\npolynomial 1\nbasis 1\nsquare 1 1\nend\n");
  EXPECT_EQ(check_certificate(c).reason, "part polynomial does not match problem (part 1)");
}

// Identical inputs give byte-identical certificates.
TEST(Determinism, SameCertificateTwice) {
  const ProblemFile pf = parse_problem(kQuartic);
  const std::string a = write_certificate({pf, witness_of(prove(pf, quiet()))});
  const std::string b = write_certificate({pf, witness_of(prove(pf, quiet()))});
  EXPECT_EQ(a, b);
}
