#include "ffgap/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "ffgap/certificate_io.hpp"
#include "ffgap/closedform.hpp"
#include "ffgap/models.hpp"
#include "json.hpp"

namespace ffgap {

namespace {

using json = nlohmann::json;

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const NumericalAmbiguityError& e) {
    err << "numerical ambiguity: " << e.what() << "\n";
    return exit_ambiguity;
  } catch (const InconclusiveError& e) {
    err << "method inconclusive: " << e.what() << "\n";
    return exit_inconclusive;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return exit_verification;
  } catch (const ConvergenceError& e) {
    err << "internal error: " << e.what() << " (worst residual " << e.worst_residual() << ")\n";
    return exit_internal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.output.empty()) {
    out << text;
  } else {
    write_atomically(config.output, text);
  }
}

std::string format_or(const RunConfig& config, const std::string& fallback) {
  return config.format.empty() ? fallback : config.format;
}

SolverOptions solver_options(const RunConfig& config) {
  SolverOptions options;
  options.kernel.tol_ker = config.tol_ker;
  if (config.cap_dense) {
    options.caps.dense = *config.cap_dense;
    options.kernel.cap_dense = *config.cap_dense;
  }
  if (config.seed) options.kernel.lanczos.seed = *config.seed;
  return options;
}

BoundOptions bound_options(const RunConfig& config) {
  BoundOptions options;
  options.m_max = config.m_max;
  options.solver = gap_solver_from_string(config.solver);
  options.timestamp = config.timestamp;
  options.numerics = solver_options(config);
  return options;
}

bool certifying(const std::string& command) { return command == "bound" || command == "verify"; }

ModelSpec model_for(const RunConfig& config) {
  return resolve_model(config.model, config.xi.value_or(0.0), certifying(config.command));
}

json parameters_json(const ModelSpec& model) {
  json p = json::object();
  for (const auto& [k, v] : model.parameters) p[k] = v;
  return p;
}

void require_format(const RunConfig& config, std::initializer_list<const char*> allowed) {
  const std::string f = config.format;
  if (f.empty()) return;
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw ValidationError("format '" + f + "' is not available for '" + config.command + "'");
}

}  // namespace

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw ValidationError("cannot open '" + tmp.string() + "' for writing");
    file << text;
    file.flush();
    if (!file) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("rename to '" + path + "' failed: " + ec.message());
  }
}

void validate_config(const RunConfig& c) {
  const std::vector<std::string> commands = {"epsilon", "gap", "bound", "verify", "sweep"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end()) {
    throw ValidationError("unknown command '" + c.command + "'");
  }
  if (!c.format.empty() && c.format != "json" && c.format != "csv" && c.format != "text") {
    throw ValidationError("format must be json, csv or text");
  }
  if (c.m && *c.m < 1) throw ValidationError("-m must be at least 1");
  if (c.n && *c.n < 1) throw ValidationError("-n must be at least 1");
  if (c.N && *c.N < 2) throw ValidationError("-N must be at least 2");
  if (c.m_max < 1) throw ValidationError("--m-max must be at least 1");
  if (c.tol_ker && !(*c.tol_ker > 0.0)) throw ValidationError("--tol-ker must be positive");
  if (c.cap_dense && *c.cap_dense < 1) throw ValidationError("--cap-dense must be positive");
  if (c.xi && !std::isfinite(*c.xi)) throw ValidationError("--xi must be finite");
  gap_solver_from_string(c.solver);

  const bool needs_model = c.command == "epsilon" || c.command == "gap" || c.command == "bound" ||
                           c.command == "sweep";
  if (needs_model && c.model.empty()) throw ValidationError("--model is required");
  if (c.model == "xxz" && c.command != "sweep" && !c.xi) {
    throw ValidationError("--xi is required for the xxz model");
  }
  if (c.command == "sweep" && !c.model.empty() && c.model != "xxz" && c.model != "aklt") {
    throw ValidationError("sweep supports the xxz and aklt models");
  }
  if ((c.command == "epsilon" || c.command == "bound") && (!c.m || !c.n)) {
    throw ValidationError("-m and -n are required");
  }
  if (c.command == "gap" && !c.N) throw ValidationError("-N is required");
  if (c.command == "verify") {
    const std::vector<std::string> suites = {"lemmas", "theorem", "aklt-closed-form",
                                             "xxz-closed-form", "all"};
    if (std::find(suites.begin(), suites.end(), c.suite) == suites.end()) {
      throw ValidationError("unknown suite '" + c.suite + "'");
    }
    if (c.trials < 1) throw ValidationError("--trials must be at least 1");
    if (c.suite == "theorem" && !c.model.empty() && (!c.m || !c.n || !c.N)) {
      throw ValidationError("the theorem suite needs -m, -n and -N with --model");
    }
  }
  if (c.command == "sweep") {
    if (!std::isfinite(c.xi_min) || !std::isfinite(c.xi_max) || !std::isfinite(c.xi_step)) {
      throw ValidationError("sweep grid bounds must be finite");
    }
    if (c.xi_min <= c.xi_max && !(c.xi_step > 0.0)) {
      throw ValidationError("--xi-step must be positive");
    }
  }
}

int cmd_epsilon(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_config(config);
    require_format(config, {"json", "csv", "text"});
    const ModelSpec model = model_for(config);
    const EpsilonResult r = epsilon(model, *config.m, *config.n, solver_options(config));
    const std::string format = format_or(config, "text");
    std::ostringstream s;
    if (format == "json") {
      json doc = {{"model", model.name},          {"parameters", parameters_json(model)},
                  {"m", r.m},                     {"n", r.n},
                  {"epsilon", r.epsilon},         {"unit_multiplicity", r.unit_multiplicity},
                  {"ground_dim", r.ground_dim},   {"ambient_dim", r.ambient_dim},
                  {"k_dim", r.k_dim},             {"spectrum", r.spectrum}};
      s << doc.dump(2) << "\n";
    } else if (format == "csv") {
      s << "model,m,n,epsilon,unit_multiplicity,ground_dim\n"
        << model.name << ',' << r.m << ',' << r.n << ',' << format_double(r.epsilon) << ','
        << r.unit_multiplicity << ',' << r.ground_dim << '\n';
    } else {
      s << "model " << model.name << "\n"
        << "epsilon(" << r.m << "," << r.n << ") = " << format_double(r.epsilon) << "\n"
        << "unit multiplicity " << r.unit_multiplicity << " (dim G(-m,n) = " << r.ground_dim
        << ")\n"
        << "K spectrum:";
      for (double v : r.spectrum) s << ' ' << format_double(v);
      s << "\n";
    }
    emit(config, out, s.str());
    return static_cast<int>(exit_ok);
  });
}

int cmd_gap(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_config(config);
    const ModelSpec model = model_for(config);
    const GammaTable t = gamma_table(model, *config.N, gap_solver_from_string(config.solver),
                                     solver_options(config));
    const std::string format = format_or(config, "text");
    std::ostringstream s;
    if (format == "json") {
      json entries = json::array();
      for (const auto& e : t.entries) {
        entries.push_back(
            {{"n", e.n}, {"gamma", e.gamma}, {"kernel_dim", e.kernel_dim}, {"solver", e.solver}});
      }
      json doc = {{"model", model.name}, {"parameters", parameters_json(model)},
                  {"N", t.N},            {"gamma_N", t.gamma_N},
                  {"entries", entries}};
      s << doc.dump(2) << "\n";
    } else if (format == "csv") {
      s << "n,gamma,kernel_dim,solver\n";
      for (const auto& e : t.entries) {
        s << e.n << ',' << format_double(e.gamma) << ',' << e.kernel_dim << ',' << e.solver << '\n';
      }
    } else {
      s << "model " << model.name << "\n";
      for (const auto& e : t.entries) {
        s << "gamma(1," << e.n << ") = " << format_double(e.gamma) << "  kernel " << e.kernel_dim
          << "  [" << e.solver << "]\n";
      }
      s << "gamma_" << t.N << " = " << format_double(t.gamma_N) << "\n";
    }
    emit(config, out, s.str());
    return static_cast<int>(exit_ok);
  });
}

namespace {

std::string bound_summary(const BoundCertificate& c) {
  std::ostringstream s;
  s << "model " << c.model;
  for (const auto& [k, v] : c.parameters) s << " " << k << "=" << format_double(v);
  s << "\n"
    << "epsilon_{" << c.m << "," << c.n << "} = " << format_double(c.epsilon_mn) << "  ["
    << to_string(c.epsilon_provenance) << (c.rigorous ? "" : ", empirical tail") << "]\n"
    << "gamma_" << c.m + c.n << " = " << format_double(c.gamma_mn) << "\n"
    << "alpha = " << format_double(c.alpha) << "  beta = " << format_double(c.beta) << "\n"
    << "bound = " << format_double(c.bound) << "\n";
  return s.str();
}

}  // namespace

int cmd_bound(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_config(config);
    require_format(config, {"json", "text"});
    const ModelSpec model = model_for(config);
    const BoundCertificate cert = bound_certificate(model, *config.m, *config.n, bound_options(config));
    const std::string format = format_or(config, "json");
    const std::string payload = format == "json" ? certificate_to_json(cert) : bound_summary(cert);
    if (config.output.empty()) {
      out << payload;
    } else {
      write_atomically(config.output, payload);
      out << bound_summary(cert);
    }
    return static_cast<int>(exit_ok);
  });
}

namespace {

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckLine> lemma_checks(const RunConfig& config) {
  std::vector<CheckLine> lines;
  const std::uint64_t seed = config.seed.value_or(42);
  for (std::size_t dim : {4u, 8u, 16u}) {
    const LemmaReport r = verify_lemma_cs(config.trials, dim, seed);
    std::ostringstream d;
    d << r.trials << " trials, violations a=" << r.violations_a << " b=" << r.violations_b
      << ", worst margins " << format_double(r.worst_margin_a) << " / "
      << format_double(r.worst_margin_b);
    if (r.counterexample) d << "\n    counterexample " << *r.counterexample;
    lines.push_back({"lemmas dim=" + std::to_string(dim), r.passed(), d.str()});
  }
  return lines;
}

CheckLine theorem_check(const ModelSpec& model, int m, int n, int N, const BoundOptions& options) {
  const TheoremReport r = verify_theorem_inequality(model, m, n, N, options);
  std::ostringstream name;
  name << "theorem " << model.name;
  for (const auto& [k, v] : model.parameters) name << " " << k << "=" << format_double(v);
  name << " (" << m << "," << n << ") N=" << N;
  std::ostringstream d;
  d << "min eigenvalue " << format_double(r.min_eigenvalue) << " on " << r.complement_dim
    << " dims [" << r.method << "]";
  return {name.str(), r.passed, d.str()};
}

std::vector<CheckLine> theorem_checks(const RunConfig& config) {
  const BoundOptions options = bound_options(config);
  std::vector<CheckLine> lines;
  if (!config.model.empty()) {
    lines.push_back(theorem_check(model_for(config), *config.m, *config.n, *config.N, options));
    return lines;
  }
  const ModelSpec xxz = xxz_model(1.0);
  for (int N = 2; N <= 6; ++N) lines.push_back(theorem_check(xxz, 1, 1, N, options));
  const ModelSpec aklt = aklt_model();
  for (int N = 2; N <= 5; ++N) lines.push_back(theorem_check(aklt, 1, 1, N, options));
  return lines;
}

CheckLine from_report(const CrossValidationReport& r) {
  std::ostringstream d;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    d << (i ? ", " : "") << r.values[i].first << " " << format_double(r.values[i].second);
  }
  d << " (spread " << format_double(r.max_disagreement) << ")";
  return {r.name, r.passed, d.str()};
}

std::vector<CheckLine> aklt_checks(const RunConfig& config) {
  const SolverOptions options = solver_options(config);
  std::vector<CheckLine> lines;
  if (config.m && config.n) {
    lines.push_back(from_report(cross_validate_aklt(*config.m, *config.n, options)));
  } else {
    for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
      lines.push_back(from_report(cross_validate_aklt(m, n, options)));
    }
  }
  return lines;
}

std::vector<CheckLine> xxz_checks(const RunConfig& config) {
  const SolverOptions options = solver_options(config);
  std::vector<double> xis = {0.25, 0.5, 1.0, 2.0, 4.0};
  if (config.xi) xis = {*config.xi};
  std::vector<int> ms = {1, 2, 3, 4, 5, 6};
  if (config.m) ms = {*config.m};
  std::vector<CheckLine> lines;
  for (double xi : xis) {
    for (int m : ms) lines.push_back(from_report(cross_validate_xxz(xi, m, options)));
  }
  return lines;
}

CheckLine certificate_check(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot read certificate '" + path + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  const BoundCertificate cert = certificate_from_json(buf.str());
  const CertificateCheck c = verify_certificate(cert);
  std::ostringstream d;
  d << "self-consistency " << format_double(c.self_consistency) << ", epsilon "
    << format_double(c.epsilon_discrepancy) << ", gamma " << format_double(c.gamma_discrepancy)
    << " (tolerance " << format_double(c.tolerance) << ")";
  return {"certificate " + path, c.passed, d.str()};
}

}  // namespace

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_config(config);
    require_format(config, {"json", "text"});
    std::vector<CheckLine> lines;
    auto add = [&](std::vector<CheckLine> more) {
      for (auto& l : more) lines.push_back(std::move(l));
    };
    if (!config.certificate.empty()) {
      lines.push_back(certificate_check(config.certificate));
    } else {
      const std::string& s = config.suite;
      if (s == "lemmas" || s == "all") add(lemma_checks(config));
      if (s == "theorem" || s == "all") add(theorem_checks(config));
      if (s == "aklt-closed-form" || s == "all") add(aklt_checks(config));
      if (s == "xxz-closed-form" || s == "all") add(xxz_checks(config));
    }

    const CheckLine* first_failure = nullptr;
    for (const auto& l : lines) {
      if (!l.passed && !first_failure) first_failure = &l;
    }
    std::ostringstream s;
    if (format_or(config, "text") == "json") {
      json checks = json::array();
      for (const auto& l : lines) {
        checks.push_back({{"name", l.name}, {"passed", l.passed}, {"detail", l.detail}});
      }
      s << json{{"passed", first_failure == nullptr}, {"checks", checks}}.dump(2) << "\n";
    } else {
      for (const auto& l : lines) {
        s << (l.passed ? "PASS " : "FAIL ") << l.name << "\n";
        if (!l.detail.empty()) s << "    " << l.detail << "\n";
      }
    }
    emit(config, out, s.str());
    if (first_failure) {
      err << "verification failed: " << first_failure->name << "\n";
      return static_cast<int>(exit_verification);
    }
    return static_cast<int>(exit_ok);
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_config(config);
    require_format(config, {"csv", "json"});
    const BoundOptions options = bound_options(config);
    std::vector<SweepRow> rows;
    if (config.model == "xxz") {
      rows = sweep_xxz(xi_grid(config.xi_min, config.xi_max, config.xi_step), config.m.value_or(1),
                       config.n.value_or(1), options);
    } else {
      rows = sweep_aklt(config.grid_m_max, config.grid_n_max, options);
    }
    std::ostringstream s;
    if (format_or(config, "csv") == "json") {
      json doc = json::array();
      auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
      for (const auto& r : rows) {
        doc.push_back({{"model", r.model}, {"xi", opt(r.xi)}, {"m", r.m}, {"n", r.n},
                       {"epsilon_closed", opt(r.epsilon_closed)},
                       {"epsilon_numeric", opt(r.epsilon_numeric)}, {"gamma", opt(r.gamma)},
                       {"bound", opt(r.bound)}, {"status", r.status}});
      }
      s << doc.dump(2) << "\n";
    } else {
      write_sweep_csv(s, rows);
    }
    emit(config, out, s.str());
    return static_cast<int>(exit_ok);
  });
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.command == "epsilon") return cmd_epsilon(config, out, err);
  if (config.command == "gap") return cmd_gap(config, out, err);
  if (config.command == "bound") return cmd_bound(config, out, err);
  if (config.command == "verify") return cmd_verify(config, out, err);
  if (config.command == "sweep") return cmd_sweep(config, out, err);
  err << "error: unknown command '" << config.command << "'\n";
  return exit_validation;
}

}  // namespace ffgap
