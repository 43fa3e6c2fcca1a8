#pragma once

#include <filesystem>
#include <string>

#include "ffgap/errors.hpp"
#include "ffgap/model_spec.hpp"
#include "ffgap/spinchain.hpp"

namespace ffgap {

/// Anisotropic spin-1/2 kink chain. xi = 0 is the isotropic (gapless)
/// point and is accepted only for exploratory spectra.
struct XXZParams {
  double xi = 1.0;
  double j = 0.5;

  double q() const;
};

/// The kink XXZ interaction
///   -sech(ξ) S·S - (1 - sech ξ) S3 S3 + j tanh(ξ) (S3 ⊗ 1 - 1 ⊗ S3) + 1/4,
/// whose spectrum is (0, 0, 0, 1). Throws ValidationError for ξ <= 0 unless
/// `certification` is false (ξ < 0 is always rejected).
LocalInteraction xxz_interaction(const XXZParams& params, bool certification = true);

/// P2(S_x + S_{x+1}) = 1/3 + (S·S)/2 + (S·S)^2/6 on two spin-1 sites.
LocalInteraction aklt_interaction();

ModelSpec xxz_model(double xi, bool certification = true);
ModelSpec aklt_model();

class ModelLoadError : public ValidationError {
 public:
  enum class Reason { parse, schema, hermiticity, positivity, symmetry, frustration };

  ModelLoadError(Reason reason, const std::string& what) : ValidationError(what), m_reason(reason) {}
  Reason reason() const { return m_reason; }

 private:
  Reason m_reason;
};

/// Parses and validates a custom model document (JSON). The model must pass
/// the frustration-free gate up to four sites.
ModelSpec parse_custom(const std::string& text, const std::string& source = "<memory>");
ModelSpec load_custom(const std::filesystem::path& path);

/// Serializes a model in the custom-model format (format_version 1).
std::string dump_custom(const ModelSpec& model, bool auto_shift = false);

/// "xxz", "aklt", or "custom:<path>".
ModelSpec resolve_model(const std::string& selector, double xi, bool certification = true);

}  // namespace ffgap
