#pragma once

// Library side of the `kolmo` command-line tool. Every command is a function
// of its inputs that writes a text report; the executable only parses flags
// and maps exceptions to exit codes.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kolmo/eigensolve.hpp"
#include "kolmo/field_file.hpp"
#include "kolmo/spectral.hpp"
#include "kolmo/theorems.hpp"

namespace kolmo {

enum ExitCode : int {
  kExitOk = 0,
  kExitAssertion = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int m = 1;
  int n = 1;
  int p = 3;
  /// Window order; 2 max(m, n) + 4 when unset.
  std::optional<int> order;
  Subspace subspace = Subspace::kCos;
  std::vector<Mode> constraints;
  double tol = kDefaultEigenTol;
  int grid = 256;
  double epsilon = 0.3;
  std::int64_t rational_cap = kDefaultRationalCap;

  /// Throws UsageError on out-of-range values.
  void validate() const;
  int effective_order() const;
};

/// "j,k", "cos:j,k" or "sin:j,k".
Mode parse_constraint(const std::string& text);

// verify ----------------------------------------------------------------------

/// scope: {"all"}, {"offdiag", m, n}, {"diag", n}, {"drivas"}, {"signs"[, max]}.
/// Prints one line per compared identity; returns kExitOk iff all hold.
/// Throws UsageError for a malformed scope.
int cmd_verify(const std::vector<std::string>& scope, std::ostream& out);

// minimize --------------------------------------------------------------------

struct MinimizeResult {
  RunConfig config;
  int order = 0;
  std::size_t dimension = 0;
  EigenPair eigen;
  CoeffVector coefficients;
  Mode dominant;
  std::optional<CertifiedResult> certificate;
  std::string certificate_error;

  bool detected() const { return certificate && certificate->conjugate_point(); }
  std::string verdict() const;
};

/// Assemble, reduce, constrain, solve, certify.
MinimizeResult minimize(const RunConfig& cfg);
std::string format_minimize_report(const MinimizeResult& r);
FieldFile minimizer_field_file(const MinimizeResult& r);

// sweep -----------------------------------------------------------------------

struct SweepCell {
  int m = 0;
  int n = 0;
  Subspace subspace = Subspace::kCos;
  std::optional<double> eigenvalue;
  std::optional<Rational> q;
  std::string verdict;
  std::string error;
  /// Cosine attempt that was superseded by the sine subspace, if any.
  std::optional<double> cos_eigenvalue;

  bool detected() const { return q && *q < 0; }
};

/// All 1 <= n <= min(m, nmax), 1 <= m <= mmax; cosine subspace first, sine
/// subspace when the cosine run does not certify. Cells are independent and
/// run on up to `jobs` threads; the result is in (m, n) order. If field_dir
/// is non-empty each cell's minimizer is written there.
std::vector<SweepCell> sweep(int mmax, int nmax, const RunConfig& defaults, int jobs = 1,
                             const std::string& field_dir = "");
/// CSV: m,n,subspace,eigenvalue,certified_q,verdict,cos_eigenvalue (the last
/// only when the sine subspace replaced the cosine run).
std::string format_sweep_table(const std::vector<SweepCell>& cells);

// mi --------------------------------------------------------------------------

struct MiReport {
  bool exact = false;
  bool in_kernel = false;
  std::optional<Rational> q;
  double q_float = 0.0;
  std::optional<Rational> tstar_squared;  // T*^2 / pi^2
  std::optional<double> tstar;
  std::string verdict() const;
};

MiReport evaluate_field(const FieldFile& file, const KolmogorovFlow& flow);
std::string format_mi_report(const MiReport& r, const KolmogorovFlow& flow);

// field -----------------------------------------------------------------------

/// Closed-form test function for (m, n): the off-diagonal candidate for
/// m > n (with x and y exchanged when m < n), the diagonal candidate for
/// m = n >= 2, and the sine field for m = n = 1.
TrigPoly theorem_field(int m, int n);

using Sampler = std::function<double(double, double)>;

Sampler stream_sampler(const KolmogorovFlow& flow);
Sampler field_sampler(const FloatField& f);
/// psi(x - eps f_y, y + eps f_x)
Sampler deformed_sampler(const KolmogorovFlow& flow, const FloatField& f, double epsilon);

/// CSV with header x,y,value over x_i = 2 pi i / grid, i < grid (x outer).
void write_grid(std::ostream& out, int grid, const Sampler& sample);

}  // namespace kolmo
