#include <fstream>
#include <set>
#include <sstream>

#include "ffgap/errors.hpp"
#include "ffgap/models.hpp"
#include "json.hpp"

namespace ffgap {

namespace {

using json = nlohmann::json;
using Reason = ModelLoadError::Reason;

template <typename T>
T required(const json& doc, const char* key, const std::string& source) {
  if (!doc.contains(key)) {
    throw ModelLoadError(Reason::schema, source + ": missing field '" + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ModelLoadError(Reason::schema, source + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

ModelSpec parse_custom(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelLoadError(Reason::parse, source + ": " + e.what());
  }
  if (!doc.is_object()) throw ModelLoadError(Reason::schema, source + ": expected a JSON object");

  static const std::set<std::string> known = {"format_version", "name",     "two_s",
                                              "matrix",         "auto_shift", "conserves_sz"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw ModelLoadError(Reason::schema, source + ": unknown field '" + key + "'");
  }

  const int version = required<int>(doc, "format_version", source);
  if (version != 1) {
    throw ModelLoadError(Reason::schema,
                         source + ": unsupported format_version " + std::to_string(version));
  }
  ModelSpec model;
  model.kind = ModelKind::custom;
  model.source = source;
  model.name = required<std::string>(doc, "name", source);
  model.two_s = required<int>(doc, "two_s", source);
  if (model.two_s < 1) throw ModelLoadError(Reason::schema, source + ": two_s must be >= 1");
  const bool auto_shift = required<bool>(doc, "auto_shift", source);
  model.conserves_sz = required<bool>(doc, "conserves_sz", source);

  const int d = model.local_dim();
  const Eigen::Index pair_dim = static_cast<Eigen::Index>(d) * d;
  const json& entries = doc.at("matrix");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != pair_dim * pair_dim) {
    std::ostringstream msg;
    msg << source << ": matrix must list " << pair_dim * pair_dim << " [re, im] pairs";
    throw ModelLoadError(Reason::schema, msg.str());
  }
  ComplexMatrix h(pair_dim, pair_dim);
  for (Eigen::Index k = 0; k < pair_dim * pair_dim; ++k) {
    const json& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ModelLoadError(Reason::schema,
                           source + ": matrix entry " + std::to_string(k) + " is not [re, im]");
    }
    h(k / pair_dim, k % pair_dim) = Complex(e[0].get<double>(), e[1].get<double>());
  }

  const double asymmetry = hermitian_defect(h);
  if (asymmetry > 1e-12 * std::max(1.0, max_abs(h))) {
    std::ostringstream msg;
    msg << source << ": interaction is not Hermitian (max asymmetry " << asymmetry << ")";
    throw ModelLoadError(Reason::hermiticity, msg.str());
  }

  const double lowest = hermitian_eigenvalues(h)(0);
  double shift = 0.0;
  if (auto_shift) {
    shift = -lowest;
    h += shift * ComplexMatrix::Identity(pair_dim, pair_dim);
  } else if (lowest < -1e-12) {
    std::ostringstream msg;
    msg << source << ": interaction is not positive (min eigenvalue " << lowest << ")";
    throw ModelLoadError(Reason::positivity, msg.str());
  }
  model.interaction = LocalInteraction{d, h, shift};

  if (model.conserves_sz) {
    const double defect = sz_commutator_defect(model.interaction, model.two_s);
    if (defect > 1e-10) {
      std::ostringstream msg;
      msg << source << ": declares S3 conservation but ‖[H(1,3), S3]‖_max = " << defect;
      throw ModelLoadError(Reason::symmetry, msg.str());
    }
  }

  try {
    check_frustration_free(model, 4);
  } catch (const FrustrationFreeError& e) {
    throw ModelLoadError(Reason::frustration, source + ": " + e.what());
  }
  return model;
}

ModelSpec load_custom(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelLoadError(Reason::parse, "cannot open model file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_custom(buffer.str(), path.string());
}

std::string dump_custom(const ModelSpec& model, bool auto_shift) {
  json doc;
  doc["format_version"] = 1;
  doc["name"] = model.name;
  doc["two_s"] = model.two_s;
  json entries = json::array();
  const ComplexMatrix& h = model.interaction.matrix;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      entries.push_back({h(r, c).real(), h(r, c).imag()});
    }
  }
  doc["matrix"] = std::move(entries);
  doc["auto_shift"] = auto_shift;
  doc["conserves_sz"] = model.conserves_sz;
  return doc.dump(2);
}

}  // namespace ffgap
