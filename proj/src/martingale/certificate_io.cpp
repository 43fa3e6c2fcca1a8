#include "ffgap/certificate_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ffgap/closedform.hpp"
#include "ffgap/models.hpp"
#include "json.hpp"

namespace ffgap {

namespace {

using json = nlohmann::json;

constexpr const char* kFormat = "ffgap-certificate";
constexpr int kVersion = 1;

json real(double x) {
  char hex[64];
  std::snprintf(hex, sizeof hex, "%a", x);
  return json{{"hex", hex}, {"decimal", format_double(x)}};
}

double read_real(const json& node, const char* key) {
  if (!node.is_object() || !node.contains("hex") || !node["hex"].is_string()) {
    throw ValidationError(std::string("certificate: field '") + key + "' lacks a hex value");
  }
  const std::string hex = node["hex"].get<std::string>();
  char* end = nullptr;
  const double value = std::strtod(hex.c_str(), &end);
  if (end == hex.c_str() || *end != '\0') {
    throw ValidationError(std::string("certificate: field '") + key + "' has malformed hex '" +
                          hex + "'");
  }
  if (node.contains("decimal")) {
    const double decimal = std::strtod(node["decimal"].get<std::string>().c_str(), nullptr);
    if (decimal != value && !(std::isnan(decimal) && std::isnan(value))) {
      throw ValidationError(std::string("certificate: field '") + key +
                            "' decimal copy disagrees with hex value");
    }
  }
  return value;
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(std::string("certificate: missing field '") + key + "'");
  return doc[key];
}

}  // namespace

std::string certificate_to_json(const BoundCertificate& cert) {
  json doc;
  doc["format"] = kFormat;
  doc["format_version"] = kVersion;
  doc["model"] = cert.model;
  json params = json::object();
  for (const auto& [k, v] : cert.parameters) params[k] = real(v);
  doc["parameters"] = params;
  doc["model_source"] = cert.model_source;
  doc["m"] = cert.m;
  doc["n"] = cert.n;
  doc["epsilon_mn"] = real(cert.epsilon_mn);
  doc["epsilon_provenance"] = to_string(cert.epsilon_provenance);
  doc["m_max"] = cert.m_max;
  doc["rigorous"] = cert.rigorous;
  doc["gamma_mn"] = real(cert.gamma_mn);
  json excerpt = json::array();
  for (const auto& e : cert.gamma_excerpt) {
    excerpt.push_back(
        {{"n", e.n}, {"gamma", real(e.gamma)}, {"kernel_dim", e.kernel_dim}, {"solver", e.solver}});
  }
  doc["gamma_excerpt"] = excerpt;
  doc["alpha"] = real(cert.alpha);
  doc["beta"] = real(cert.beta);
  doc["bound"] = real(cert.bound);
  doc["shift_applied"] = real(cert.shift_applied);
  json tol;
  tol["tol_ker"] = cert.tol_ker ? real(*cert.tol_ker) : json(nullptr);
  tol["tol_unit"] = real(cert.tol_unit);
  tol["lanczos_tol"] = real(cert.lanczos_tol);
  tol["cap_dense"] = cert.cap_dense;
  doc["tolerances"] = tol;
  doc["gap_solver"] = cert.gap_solver;
  doc["timestamp"] = cert.timestamp;
  return doc.dump(2) + "\n";
}

BoundCertificate certificate_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("certificate: parse error: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kFormat) {
    throw ValidationError("certificate: not an ffgap certificate");
  }
  if (doc.value("format_version", 0) != kVersion) {
    throw ValidationError("certificate: unsupported format_version");
  }
  try {
    BoundCertificate cert;
    cert.model = require(doc, "model").get<std::string>();
    for (const auto& [k, v] : require(doc, "parameters").items()) {
      cert.parameters[k] = read_real(v, k.c_str());
    }
    cert.model_source = require(doc, "model_source").get<std::string>();
    cert.m = require(doc, "m").get<int>();
    cert.n = require(doc, "n").get<int>();
    cert.epsilon_mn = read_real(require(doc, "epsilon_mn"), "epsilon_mn");
    cert.epsilon_provenance =
        provenance_from_string(require(doc, "epsilon_provenance").get<std::string>());
    cert.m_max = require(doc, "m_max").get<int>();
    cert.rigorous = require(doc, "rigorous").get<bool>();
    cert.gamma_mn = read_real(require(doc, "gamma_mn"), "gamma_mn");
    for (const auto& e : require(doc, "gamma_excerpt")) {
      GammaEntry entry;
      entry.n = require(e, "n").get<int>();
      entry.gamma = read_real(require(e, "gamma"), "gamma_excerpt.gamma");
      entry.kernel_dim = require(e, "kernel_dim").get<std::size_t>();
      entry.solver = require(e, "solver").get<std::string>();
      cert.gamma_excerpt.push_back(std::move(entry));
    }
    cert.alpha = read_real(require(doc, "alpha"), "alpha");
    cert.beta = read_real(require(doc, "beta"), "beta");
    cert.bound = read_real(require(doc, "bound"), "bound");
    cert.shift_applied = read_real(require(doc, "shift_applied"), "shift_applied");
    const json& tol = require(doc, "tolerances");
    if (!require(tol, "tol_ker").is_null()) cert.tol_ker = read_real(tol["tol_ker"], "tol_ker");
    cert.tol_unit = read_real(require(tol, "tol_unit"), "tol_unit");
    cert.lanczos_tol = read_real(require(tol, "lanczos_tol"), "lanczos_tol");
    cert.cap_dense = require(tol, "cap_dense").get<std::size_t>();
    cert.gap_solver = require(doc, "gap_solver").get<std::string>();
    cert.timestamp = require(doc, "timestamp").get<std::string>();
    return cert;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("certificate: schema error: ") + e.what());
  }
}

CertificateCheck verify_certificate(const BoundCertificate& cert) {
  CertificateCheck check;
  check.self_consistency = certificate_self_consistency(cert);

  ModelSpec model;
  if (cert.model == "xxz") {
    model = xxz_model(cert.parameters.at("xi"));
  } else if (cert.model == "aklt") {
    model = aklt_model();
  } else {
    model = load_custom(cert.model_source);
  }

  BoundOptions options;
  options.m_max = cert.m_max;
  options.solver = gap_solver_from_string(cert.gap_solver);
  options.numerics.kernel.tol_ker = cert.tol_ker;
  options.numerics.tol_unit = cert.tol_unit;
  options.numerics.kernel.lanczos.tol = cert.lanczos_tol;
  options.numerics.caps.dense = cert.cap_dense;

  // Closed-form sups ignore m_max; the computed path rescans [m, m_max].
  const int m_max = cert.epsilon_provenance == EpsilonProvenance::closed_form ? cert.m : cert.m_max;
  check.epsilon_recomputed = epsilon_sup(model, cert.m, cert.n, m_max, options.numerics).value;
  check.gamma_recomputed =
      gamma_table(model, cert.m + cert.n, options.solver, options.numerics).gamma_N;
  check.epsilon_discrepancy = std::abs(check.epsilon_recomputed - cert.epsilon_mn);
  check.gamma_discrepancy = std::abs(check.gamma_recomputed - cert.gamma_mn);
  check.passed = check.self_consistency <= check.tolerance &&
                 check.epsilon_discrepancy <= check.tolerance &&
                 check.gamma_discrepancy <= check.tolerance;
  return check;
}

}  // namespace ffgap
