#pragma once

#include <string>

#include "ffgap/martingale.hpp"

namespace ffgap {

/// JSON form of a certificate. Every real is stored twice: as a C99 hex
/// float under "hex" (read back bit-exactly) and as %.17g under "decimal"
/// for people. Keys are sorted, so equal certificates give equal bytes.
std::string certificate_to_json(const BoundCertificate& cert);

/// Inverse of certificate_to_json; throws ValidationError on schema errors
/// or when a decimal copy disagrees with its hex value.
BoundCertificate certificate_from_json(const std::string& text);

struct CertificateCheck {
  double self_consistency = 0.0;  // α, β, bound, γ running minimum
  double epsilon_recomputed = 0.0;
  double gamma_recomputed = 0.0;
  double epsilon_discrepancy = 0.0;
  double gamma_discrepancy = 0.0;
  double tolerance = 1e-12;
  bool passed = false;
};

/// Re-reads a certificate and recomputes ε_{m,n} and γ_{m+n} with the
/// tolerances recorded in it. Custom models are reloaded from model_source.
CertificateCheck verify_certificate(const BoundCertificate& cert);

}  // namespace ffgap
