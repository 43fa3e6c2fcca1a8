#include <cmath>
#include <cstdio>
#include <ostream>

#include "ffgap/closedform.hpp"
#include "ffgap/models.hpp"

namespace ffgap {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string field(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

// Per-row failure class for the status column.
template <typename Fn>
void guarded(SweepRow& row, Fn&& fn) {
  try {
    fn();
  } catch (const InconclusiveError&) {
    row.status = "inconclusive";
  } catch (const NumericalAmbiguityError&) {
    row.status = "ambiguous";
  } catch (const VerificationError&) {
    row.status = "verification-failed";
  } catch (const ValidationError&) {
    row.status = "invalid";
  } catch (const std::exception&) {
    row.status = "error";
  }
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "model,xi,m,n,epsilon_closed,epsilon_numeric,gamma,bound,status\n";
  for (const auto& r : rows) {
    out << r.model << ',' << field(r.xi) << ',' << r.m << ',' << r.n << ','
        << field(r.epsilon_closed) << ',' << field(r.epsilon_numeric) << ',' << field(r.gamma)
        << ',' << field(r.bound) << ',' << r.status << '\n';
  }
}

std::vector<double> xi_grid(double xi_min, double xi_max, double step) {
  if (!std::isfinite(xi_min) || !std::isfinite(xi_max) || !std::isfinite(step)) {
    throw ValidationError("xi_grid: bounds and step must be finite");
  }
  std::vector<double> out;
  if (xi_min > xi_max) return out;
  if (!(step > 0.0)) throw ValidationError("xi_grid: step must be positive");
  // Index-based so the grid points do not accumulate rounding.
  for (long k = 0;; ++k) {
    const double xi = xi_min + static_cast<double>(k) * step;
    if (xi > xi_max + 1e-9) break;
    out.push_back(xi);
  }
  return out;
}

std::vector<SweepRow> sweep_xxz(const std::vector<double>& xis, int m, int n,
                                const BoundOptions& options) {
  std::vector<SweepRow> rows;
  for (double xi : xis) {
    SweepRow row;
    row.model = "xxz";
    row.xi = xi;
    row.m = m;
    row.n = n;
    guarded(row, [&] {
      const ModelSpec model = xxz_model(xi);
      if (n == 1) row.epsilon_closed = xxz_epsilon_closed(xi, m);
      row.epsilon_numeric = epsilon(model, m, n, options.numerics).epsilon;
      const BoundCertificate cert = bound_certificate(model, m, n, options);
      row.gamma = cert.gamma_mn;
      row.bound = cert.bound;
    });
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> sweep_aklt(int m_max, int n_max, const BoundOptions& options) {
  std::vector<SweepRow> rows;
  if (m_max < 1 || n_max < 1) return rows;
  const ModelSpec model = aklt_model();
  // One table serves every (m, n): γ_{m+n} is its running minimum at m+n.
  std::optional<GammaTable> table;
  std::string table_status = "ok";
  try {
    table = gamma_table(model, m_max + n_max, options.solver, options.numerics);
  } catch (const std::exception&) {
    table_status = "gap-failed";
  }

  for (int m = 1; m <= m_max; ++m) {
    for (int n = 1; n <= n_max; ++n) {
      SweepRow row;
      row.model = "aklt";
      row.m = m;
      row.n = n;
      guarded(row, [&] {
        row.epsilon_closed = aklt_lambda(m, n).epsilon;
        row.epsilon_numeric = epsilon(model, m, n, options.numerics).epsilon;
        if (m > n) return;  // the bound needs m <= n
        if (!table) {
          row.status = table_status;
          return;
        }
        double gamma = table->entries.front().gamma;
        for (const auto& e : table->entries) {
          if (e.n <= m + n) gamma = std::min(gamma, e.gamma);
        }
        const double eps = aklt_epsilon_sup(m, n).value;
        if (eps >= 0.5) throw InconclusiveError("epsilon >= 1/2", eps);
        row.gamma = gamma;
        row.bound = gamma * (1.0 - 2.0 * std::sqrt(eps * (1.0 - eps)));
      });
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace ffgap
