#include "kolmo/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>

namespace kolmo {

namespace {

std::string fmt_double(double v, const char* spec = "%.12e") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("expected an integer for " + what + ", got '" + s + "'");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

void RunConfig::validate() const {
  if (m < 1 || n < 1) throw UsageError("--m and --n must be >= 1");
  if (p < 0) throw UsageError("--p must be >= 0");
  if (order && *order < 1) throw UsageError("--N must be >= 1");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  if (grid < 1) throw UsageError("--grid must be >= 1");
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw UsageError("--epsilon must be >= 0");
  if (rational_cap < 1) throw UsageError("rational cap must be >= 1");
}

int RunConfig::effective_order() const {
  return order ? *order : 2 * std::max(m, n) + 4;
}

Mode parse_constraint(const std::string& text) {
  std::string body = text;
  Parity parity = Parity::kCos;
  if (auto colon = body.find(':'); colon != std::string::npos) {
    try {
      parity = parse_parity(body.substr(0, colon));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    body = body.substr(colon + 1);
  }
  const auto comma = body.find(',');
  if (comma == std::string::npos) throw UsageError("constraint must look like j,k (got '" + text + "')");
  const int j = to_int(body.substr(0, comma), "constraint j");
  const int k = to_int(body.substr(comma + 1), "constraint k");
  auto [mode, s] = canonical_mode(parity, j, k);
  if (s == 0 || mode.is_constant()) throw UsageError("constraint '" + text + "' names no window mode");
  return mode;
}

// ---------------------------------------------------------------------------
// verify

namespace {

void print_report(const Report& report, std::ostream& out) {
  for (const Check& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": expected " << c.expected
        << ", computed " << c.computed << '\n';
  }
}

}  // namespace

int cmd_verify(const std::vector<std::string>& scope, std::ostream& out) {
  if (scope.empty()) throw UsageError("verify needs a scope: all | offdiag M N | diag N | drivas | signs");
  const std::string& what = scope[0];
  Report report;
  std::vector<std::string> summary;

  auto expect_args = [&](std::size_t count) {
    if (scope.size() != count + 1) {
      throw UsageError("verify " + what + " takes " + std::to_string(count) + " argument(s)");
    }
  };

  if (what == "offdiag") {
    expect_args(2);
    const int m = to_int(scope[1], "m"), n = to_int(scope[2], "n");
    if (n < 1 || m <= n) throw UsageError("verify offdiag requires m > n >= 1");
    report = verify_offdiag(m, n);
    const CriticalPoint c = offdiag_candidate(m, n);
    summary.push_back("a0 = " + to_string(c.values[0]));
    summary.push_back("b0 = " + to_string(c.values[1]));
    summary.push_back("H(a0,b0) = " + to_string(c.hvalue));
  } else if (what == "diag") {
    expect_args(1);
    const int n = to_int(scope[1], "n");
    if (n < 1) throw UsageError("verify diag requires n >= 1");
    report = verify_diag(n);
    const CriticalPoint c = diag_candidate(n);
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      summary.push_back(c.variables[i] + "0 = " + to_string(c.values[i]));
    }
    summary.push_back("H(min) = " + to_string(c.hvalue));
  } else if (what == "drivas") {
    expect_args(0);
    report = verify_drivas();
    summary.push_back("MI/pi^2 = " + to_string(drivas_check()));
  } else if (what == "signs") {
    int max_check = 10;
    if (scope.size() == 2) {
      max_check = to_int(scope[1], "max_check");
    } else if (scope.size() != 1) {
      throw UsageError("verify signs takes at most one argument");
    }
    if (max_check < 1) throw UsageError("verify signs requires max_check >= 1");
    SignCertificates certs = sign_certificates(max_check);
    report = std::move(certs.report);
    summary.push_back("J(k+1,k) = " + certs.j_shift.str());
    summary.push_back("diag minimum = (" + certs.diag_numerator_k.str() + ") / (" +
                      certs.diag_denominator_k.str() + ")");
  } else if (what == "all") {
    expect_args(0);
    for (int m = 2; m <= 6; ++m) {
      for (int n = 1; n < m; ++n) report.append(verify_offdiag(m, n));
    }
    for (int n = 1; n <= 6; ++n) report.append(verify_diag(n));
    report.append(verify_drivas());
    report.append(sign_certificates(10).report);
  } else {
    throw UsageError("unknown verify scope '" + what + "'");
  }

  print_report(report, out);
  for (const std::string& line : summary) out << line << '\n';
  if (const Check* bad = report.first_failure()) {
    out << "FAIL: " << bad->name << " (expected " << bad->expected << ", computed "
        << bad->computed << ")\n";
    return kExitAssertion;
  }
  out << "PASS: " << report.checks.size() << " identities verified\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// minimize

std::string MinimizeResult::verdict() const {
  if (!certificate) return "certification failed: " + certificate_error;
  return certificate->conjugate_point() ? "conjugate point detected" : "not detected";
}

MinimizeResult minimize(const RunConfig& cfg) {
  cfg.validate();
  const KolmogorovFlow flow(cfg.m, cfg.n);
  const int order = cfg.effective_order();
  auto window = std::make_shared<const SpectralWindow>(order, cfg.subspace);
  const QuadForm form = assemble_quadform(flow, window);
  ReducedForm reduced = constrain(reduce_symmetric(form, cfg.p), cfg.constraints);
  EigenPair eig = sym_eig_min(reduced.S, cfg.tol);
  CoeffVector coeffs = reduced.to_coefficients(eig.vector);
  const Mode dominant = coeffs.dominant_mode();

  std::optional<CertifiedResult> cert;
  std::string cert_error;
  try {
    cert = certify_candidate(coeffs, flow, cfg.rational_cap);
  } catch (const std::exception& e) {
    cert_error = e.what();
  }
  const std::size_t dim = reduced.S.rows();
  return MinimizeResult{cfg,      order,    dim,          std::move(eig), std::move(coeffs),
                        dominant, std::move(cert), std::move(cert_error)};
}

namespace {

std::string constraints_string(const std::vector<Mode>& modes) {
  if (modes.empty()) return "none";
  std::string s;
  for (const Mode& m : modes) s += (s.empty() ? "" : " ") + to_string(m);
  return s;
}

}  // namespace

std::string format_minimize_report(const MinimizeResult& r) {
  const KolmogorovFlow flow(r.config.m, r.config.n);
  std::ostringstream os;
  os << "flow: m=" << flow.m() << " n=" << flow.n() << " lambda2=" << flow.lambda2() << '\n';
  os << "window: order=" << r.order << " subspace=" << to_string(r.config.subspace)
     << " dimension=" << r.dimension << '\n';
  os << "constraints: " << constraints_string(r.config.constraints) << '\n';
  os << "sobolev_order: " << r.config.p << '\n';
  os << "min_eigenvalue: " << fmt_double(r.eigen.value) << '\n';
  os << "residual: " << fmt_double(r.eigen.residual, "%.3e") << '\n';
  os << "dominant_mode: " << to_string(r.dominant) << '\n';
  if (r.certificate) {
    os << "certified_terms: " << r.certificate->field.size() << '\n';
    os << "certified_mi_over_pi2: " << to_string(r.certificate->q) << '\n';
    os << "certified_mi_over_pi2_approx: " << fmt_double(to_double(r.certificate->q)) << '\n';
  } else {
    os << "certification_error: " << r.certificate_error << '\n';
  }
  os << "verdict: " << r.verdict() << '\n';
  return os.str();
}

FieldFile minimizer_field_file(const MinimizeResult& r) {
  std::ostringstream desc;
  desc << "Rayleigh-quotient minimizer, m=" << r.config.m << " n=" << r.config.n
       << " p=" << r.config.p << " N=" << r.order << " subspace=" << to_string(r.config.subspace)
       << " constraints=" << constraints_string(r.config.constraints)
       << " eigenvalue=" << fmt_double(r.eigen.value);
  if (!r.certificate) {
    // Nothing exact to record; keep the floating coefficients.
    FieldFile file;
    file.m = r.config.m;
    file.n = r.config.n;
    file.description = desc.str();
    const auto& modes = r.coefficients.window->modes();
    for (std::size_t i = 0; i < modes.size(); ++i) {
      if (r.coefficients.values[i] == 0.0) continue;
      file.modes.push_back(FieldTerm{modes[i].parity, modes[i].j, modes[i].k,
                                     r.coefficients.values[i]});
    }
    file.extras.emplace_back("certification_error", r.certificate_error);
    return file;
  }
  FieldFile file = FieldFile::from_trigpoly(r.config.m, r.config.n, desc.str(), r.certificate->field);
  file.extras.emplace_back("certified_mi_over_pi2", to_string(r.certificate->q));
  return file;
}

// ---------------------------------------------------------------------------
// sweep

namespace {

SweepCell run_cell(int m, int n, const RunConfig& defaults, const std::string& field_dir) {
  SweepCell cell;
  cell.m = m;
  cell.n = n;
  RunConfig cfg = defaults;
  cfg.m = m;
  cfg.n = n;
  cfg.constraints.clear();

  auto attempt = [&](Subspace s) {
    cfg.subspace = s;
    cell.subspace = s;
    try {
      MinimizeResult r = minimize(cfg);
      cell.eigenvalue = r.eigen.value;
      cell.q.reset();
      if (r.certificate) cell.q = r.certificate->q;
      cell.verdict = r.verdict();
      cell.error.clear();
      if (!field_dir.empty()) {
        const std::string name = "minimizer_m" + std::to_string(m) + "_n" + std::to_string(n) +
                                 "_" + to_string(s) + ".json";
        minimizer_field_file(r).write((std::filesystem::path(field_dir) / name).string());
      }
    } catch (const std::exception& e) {
      cell.eigenvalue.reset();
      cell.q.reset();
      cell.verdict = "error";
      cell.error = e.what();
    }
  };

  attempt(Subspace::kCos);
  if (!cell.detected()) {
    cell.cos_eigenvalue = cell.eigenvalue;
    attempt(Subspace::kSin);
  }
  return cell;
}

}  // namespace

std::vector<SweepCell> sweep(int mmax, int nmax, const RunConfig& defaults, int jobs,
                             const std::string& field_dir) {
  if (mmax < 1 || nmax < 1) throw UsageError("sweep bounds must be >= 1");
  if (!field_dir.empty()) std::filesystem::create_directories(field_dir);
  std::vector<std::pair<int, int>> pairs;
  for (int m = 1; m <= mmax; ++m) {
    for (int n = 1; n <= std::min(m, nmax); ++n) pairs.emplace_back(m, n);
  }
  std::vector<SweepCell> cells(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      cells[i] = run_cell(pairs[i].first, pairs[i].second, defaults, field_dir);
    }
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(pairs.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return cells;
}

std::string format_sweep_table(const std::vector<SweepCell>& cells) {
  std::ostringstream os;
  os << "m,n,subspace,eigenvalue,certified_q,verdict,cos_eigenvalue\n";
  for (const SweepCell& c : cells) {
    os << c.m << ',' << c.n << ',' << to_string(c.subspace) << ','
       << (c.eigenvalue ? fmt_double(*c.eigenvalue) : std::string("nan")) << ','
       << (c.q ? to_string(*c.q) : std::string("none")) << ',';
    if (c.detected()) {
      os << "conjugate point detected";
    } else if (!c.error.empty()) {
      os << "error: " << c.error;
    } else {
      os << c.verdict;
    }
    os << ',' << (c.cos_eigenvalue ? fmt_double(*c.cos_eigenvalue) : std::string()) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// mi

std::string MiReport::verdict() const {
  if (in_kernel) return "field is in the kernel of L ({psi, f} = 0)";
  const bool negative = exact ? (q && *q < 0) : q_float < 0.0;
  return negative ? "conjugate point detected" : "not detected by this field";
}

MiReport evaluate_field(const FieldFile& file, const KolmogorovFlow& flow) {
  MiReport r;
  r.exact = file.exact();
  if (r.exact) {
    const TrigPoly f = file.to_trigpoly();
    const TrigPoly phi = flow.bracket(f);
    if (phi.is_zero()) {
      r.in_kernel = true;
      return r;
    }
    r.q = mi_exact(phi, flow);
    r.q_float = to_double(*r.q);
    r.tstar_squared = conjugate_time_bound_squared(f, flow);
    r.tstar = conjugate_time_bound(f, flow);
    return r;
  }

  const FloatField f = file.to_float_field();
  int order = 1;
  for (const auto& t : f.terms()) order = std::max({order, std::abs(t.mode.j), std::abs(t.mode.k)});
  auto window = std::make_shared<const SpectralWindow>(order, Subspace::kFull);
  std::vector<double> values(window->size(), 0.0);
  double grad = 0.0;
  for (const auto& t : f.terms()) {
    if (t.mode.is_constant()) continue;
    values[*window->find(t.mode)] += t.value;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    grad += 2.0 * values[i] * values[i] * static_cast<double>(window->modes()[i].norm2());
  }
  const CoeffVector v(window, std::move(values));
  const SpectralWindow ext(order + std::max(flow.m(), flow.n()), Subspace::kFull);
  const std::vector<double> lv = assemble_L(flow, *window, ext).apply(v.values);
  double scale = 0.0;
  for (double x : v.values) scale = std::max(scale, std::abs(x));
  double lmax = 0.0;
  for (double x : lv) lmax = std::max(lmax, std::abs(x));
  if (lmax <= 1e-14 * std::max(scale, 1e-300) * flow.lambda2()) {
    r.in_kernel = true;
    return r;
  }
  r.q_float = mi_float(v, flow);
  if (r.q_float < 0.0) r.tstar = M_PI * std::sqrt(grad / -r.q_float);
  return r;
}

std::string format_mi_report(const MiReport& r, const KolmogorovFlow& flow) {
  std::ostringstream os;
  os << "flow: m=" << flow.m() << " n=" << flow.n() << " lambda2=" << flow.lambda2() << '\n';
  os << "coefficients: " << (r.exact ? "exact" : "floating") << '\n';
  if (!r.in_kernel) {
    if (r.q) os << "mi_over_pi2: " << to_string(*r.q) << '\n';
    os << "mi_over_pi2_approx: " << fmt_double(r.q_float) << '\n';
    if (r.tstar_squared) os << "conjugate_time_bound_squared_over_pi2: " << to_string(*r.tstar_squared) << '\n';
    if (r.tstar) os << "conjugate_time_bound: " << fmt_double(*r.tstar) << '\n';
  }
  os << "verdict: " << r.verdict() << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// field

TrigPoly theorem_field(int m, int n) {
  if (m < 1 || n < 1) throw UsageError("theorem field needs m, n >= 1");
  if (m == n) {
    if (n == 1) return drivas_field();
    const CriticalPoint c = diag_candidate(n);
    return diag_field(n, c.values[0], c.values[1], c.values[2], c.values[3]);
  }
  const int hi = std::max(m, n), lo = std::min(m, n);
  const CriticalPoint c = offdiag_candidate(hi, lo);
  const TrigPoly f = offdiag_field(hi, lo, c.values[0], c.values[1]);
  if (m > n) return f;
  TrigPoly swapped;
  for (const auto& [mode, coef] : f.terms()) swapped.add_term(mode.parity, mode.k, mode.j, coef);
  return swapped;
}

Sampler stream_sampler(const KolmogorovFlow& flow) {
  const int m = flow.m(), n = flow.n();
  return [m, n](double x, double y) { return -std::cos(m * x) * std::cos(n * y); };
}

Sampler field_sampler(const FloatField& f) {
  return [f](double x, double y) { return f.eval(x, y); };
}

Sampler deformed_sampler(const KolmogorovFlow& flow, const FloatField& f, double epsilon) {
  const Sampler psi = stream_sampler(flow);
  const FloatField fx = f.dx(), fy = f.dy();
  return [psi, fx, fy, epsilon](double x, double y) {
    return psi(x - epsilon * fy.eval(x, y), y + epsilon * fx.eval(x, y));
  };
}

void write_grid(std::ostream& out, int grid, const Sampler& sample) {
  if (grid < 1) throw UsageError("grid must be positive");
  out << "x,y,value\n";
  char buf[128];
  for (int i = 0; i < grid; ++i) {
    const double x = 2.0 * M_PI * i / grid;
    for (int j = 0; j < grid; ++j) {
      const double y = 2.0 * M_PI * j / grid;
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", x, y, sample(x, y));
      out << buf;
    }
  }
}

}  // namespace kolmo
