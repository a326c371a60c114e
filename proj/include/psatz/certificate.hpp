#pragma once

#include "psatz/problem.hpp"
#include "psatz/witness.hpp"

#include <string>
#include <string_view>

namespace psatz {

/// A self-contained, line-oriented witness file:
///
///   psatz-certificate 1
///   vars y
///   assume -2 + y^2 >= 0
///   goal unsat
///   part 1
///   polynomial y^2 - 2
///   basis 1 y
///   square 2/3 1 0
///   end
///
/// Every rational is written exactly as `num` or `num/den`.
struct Certificate {
  ProblemFile problem;
  PsatzWitness witness;
};

inline constexpr int kCertificateVersion = 1;

std::string write_certificate(const Certificate& cert);

/// Throws InputError on malformed text. Structural problems that do not
/// prevent parsing (wrong vector lengths, bad coefficients) are left to
/// verify_witness so that they are reported as rejections.
Certificate parse_certificate(std::string_view text);

inline VerifyResult check_certificate(const Certificate& cert) { return verify_witness(cert.witness, cert.problem); }

}  // namespace psatz
