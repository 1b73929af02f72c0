// kolmo: conjugate points along Kolmogorov flows on the flat torus.
//
//   kolmo verify all | offdiag M N | diag N | drivas | signs [MAX]
//   kolmo minimize --m 3 --n 2 [--p 3] [--N 10] [--subspace cos] [--constrain 0,1] [--out f.json]
//   kolmo sweep --mmax 4 --nmax 4 [--N 12] [--out table.csv] [--field-dir DIR]
//   kolmo mi --field f.json [--m M --n N]
//   kolmo field stream|minimizer-file|deformed [--field f.json | --example theorem] --out grid.csv
//
// Exit codes: 0 success, 1 assertion failure, 2 usage error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "kolmo/commands.hpp"

namespace {

using namespace kolmo;

struct Options {
  RunConfig cfg;
  std::optional<int> m, n, order;
  std::string subspace = "cos";
  std::vector<std::string> constraints;
  std::string out;
  std::string field;
  std::string example;
  std::string field_dir;
  std::vector<std::string> scope;
  std::string what;
  int mmax = 4;
  int nmax = 4;
  int jobs = 0;
};

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--m", o.m, "x wavenumber of the flow");
  cmd->add_option("--n", o.n, "y wavenumber of the flow");
  cmd->add_option("--p", o.cfg.p, "Sobolev order of the normalizing metric")->capture_default_str();
  cmd->add_option("--N", o.order, "window order (default 2 max(m,n) + 4)");
  cmd->add_option("--subspace", o.subspace, "cos | sin | full")->capture_default_str();
  cmd->add_option("--constrain", o.constraints, "mode forced to zero: j,k or sin:j,k (repeatable)");
  cmd->add_option("--tol", o.cfg.tol, "eigensolver residual tolerance")->capture_default_str();
  cmd->add_option("--grid", o.cfg.grid, "grid resolution for field export")->capture_default_str();
  cmd->add_option("--epsilon", o.cfg.epsilon, "deformation amplitude")->capture_default_str();
  cmd->add_option("--out", o.out, "output file");
}

RunConfig finish_config(const Options& o, bool need_flow) {
  RunConfig cfg = o.cfg;
  if (need_flow && (!o.m || !o.n)) throw UsageError("--m and --n are required");
  if (o.m) cfg.m = *o.m;
  if (o.n) cfg.n = *o.n;
  cfg.order = o.order;
  try {
    cfg.subspace = parse_subspace(o.subspace);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (const std::string& c : o.constraints) cfg.constraints.push_back(parse_constraint(c));
  cfg.validate();
  return cfg;
}

// Writes to --out when given, stdout otherwise.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  fn(f);
}

int run_minimize(const Options& o) {
  const RunConfig cfg = finish_config(o, true);
  const MinimizeResult r = minimize(cfg);
  std::cout << format_minimize_report(r);
  if (!o.out.empty()) minimizer_field_file(r).write(o.out);
  return kExitOk;
}

int run_sweep(const Options& o) {
  RunConfig cfg = finish_config(o, false);
  const int jobs = o.jobs > 0 ? o.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto cells = sweep(o.mmax, o.nmax, cfg, jobs, o.field_dir);
  const std::string table = format_sweep_table(cells);
  std::cout << table;
  if (!o.out.empty()) emit(o.out, [&](std::ostream& os) { os << table; });
  for (const SweepCell& c : cells) {
    if (!c.detected()) return kExitAssertion;
  }
  return kExitOk;
}

int run_mi(const Options& o) {
  if (o.field.empty()) throw UsageError("mi needs --field FILE");
  const FieldFile file = FieldFile::read(o.field);
  const KolmogorovFlow flow(o.m.value_or(file.m), o.n.value_or(file.n));
  const MiReport r = evaluate_field(file, flow);
  std::cout << format_mi_report(r, flow);
  return kExitOk;
}

FloatField load_field(const Options& o, const RunConfig& cfg) {
  if (!o.field.empty() && !o.example.empty()) throw UsageError("use either --field or --example");
  if (!o.field.empty()) return FieldFile::read(o.field).to_float_field();
  if (o.example == "theorem") return FloatField::from(theorem_field(cfg.m, cfg.n));
  if (!o.example.empty()) throw UsageError("unknown --example '" + o.example + "' (expected theorem)");
  throw UsageError("this field export needs --field FILE or --example theorem");
}

int run_field(const Options& o) {
  Sampler sampler;
  RunConfig cfg;
  if (o.what == "stream") {
    cfg = finish_config(o, true);
    sampler = stream_sampler(KolmogorovFlow(cfg.m, cfg.n));
  } else if (o.what == "minimizer-file") {
    if (o.field.empty()) throw UsageError("field minimizer-file needs --field FILE");
    cfg = finish_config(o, false);
    sampler = field_sampler(FieldFile::read(o.field).to_float_field());
  } else if (o.what == "deformed") {
    Options with_flow = o;
    if (!o.field.empty() && (!o.m || !o.n)) {
      const FieldFile file = FieldFile::read(o.field);
      if (!with_flow.m) with_flow.m = file.m;
      if (!with_flow.n) with_flow.n = file.n;
    }
    cfg = finish_config(with_flow, true);
    sampler = deformed_sampler(KolmogorovFlow(cfg.m, cfg.n), load_field(o, cfg), cfg.epsilon);
  } else {
    throw UsageError("unknown field kind '" + o.what + "' (expected stream|minimizer-file|deformed)");
  }
  emit(o.out, [&](std::ostream& os) { write_grid(os, cfg.grid, sampler); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Misiolek-criterion conjugate points along Kolmogorov flows on the torus"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "exact verification of the closed-form test functions");
  verify->add_option("scope", o.scope, "all | offdiag M N | diag N | drivas | signs [MAX]")->required();

  auto* min = app.add_subcommand("minimize", "minimize the Rayleigh quotient on a Fourier window");
  add_run_flags(min, o);

  auto* sw = app.add_subcommand("sweep", "minimize and certify over a range of flows");
  add_run_flags(sw, o);
  sw->add_option("--mmax", o.mmax, "largest m")->capture_default_str();
  sw->add_option("--nmax", o.nmax, "largest n")->capture_default_str();
  sw->add_option("--jobs", o.jobs, "worker threads (default: hardware concurrency)");
  sw->add_option("--field-dir", o.field_dir, "write each cell's minimizer here");

  auto* mi = app.add_subcommand("mi", "Misiolek index of a field file");
  add_run_flags(mi, o);
  mi->add_option("--field", o.field, "field file (JSON)");

  auto* field = app.add_subcommand("field", "export grid samples");
  add_run_flags(field, o);
  field->add_option("what", o.what, "stream | minimizer-file | deformed")->required();
  field->add_option("--field", o.field, "field file (JSON)");
  field->add_option("--example", o.example, "built-in field: theorem");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(o.scope, std::cout);
    if (min->parsed()) return run_minimize(o);
    if (sw->parsed()) return run_sweep(o);
    if (mi->parsed()) return run_mi(o);
    if (field->parsed()) return run_field(o);
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
  return kExitUsage;
}
