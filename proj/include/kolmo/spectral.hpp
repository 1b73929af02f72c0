#pragma once

// Galerkin form of the Misiolek index on a truncated Fourier window.
//
// For a flow psi with lambda^2 = m^2 + n^2 let L f = {psi, f}. On a window of
// canonical modes the index of phi = L f is the quadratic form
//
//   MI(L f) / (2 pi^2) = v^T B v,    B = M^T (Lambda - lambda^2 I) M,
//
// where v holds the coefficients of f and M is the matrix of L into a window
// enlarged by max(m, n). Nothing is lost in the enlarged window, so B is the
// exact index on the span and a negative eigenvalue of B is a witness, not a
// truncation artifact.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kolmo/eigensolve.hpp"
#include "kolmo/matrix.hpp"
#include "kolmo/rational.hpp"
#include "kolmo/trigpoly.hpp"

namespace kolmo {

enum class Subspace : std::uint8_t { kCos, kSin, kFull };

std::string to_string(Subspace s);
Subspace parse_subspace(const std::string& text);

/// Canonical modes with 0 < j^2 + k^2, |j| <= N and |k| <= N, in
/// lexicographic (j, k, parity) order. The constant mode is never included.
class SpectralWindow {
 public:
  SpectralWindow(int order, Subspace subspace);

  int order() const { return order_; }
  Subspace subspace() const { return subspace_; }
  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  std::optional<std::size_t> find(const Mode& mode) const;
  bool contains(Parity parity) const;

  /// Copy of this window without the given modes. Throws std::invalid_argument
  /// for modes not in the window or when nothing would remain.
  SpectralWindow without(const std::vector<Mode>& removed) const;

 private:
  SpectralWindow(int order, Subspace subspace, std::vector<Mode> modes);

  int order_;
  Subspace subspace_;
  std::vector<Mode> modes_;
  std::map<Mode, std::size_t> index_;
};

using WindowPtr = std::shared_ptr<const SpectralWindow>;

struct CoeffVector {
  WindowPtr window;
  std::vector<double> values;

  /// Throws std::invalid_argument when the length does not match the window.
  CoeffVector(WindowPtr w, std::vector<double> v);

  /// Float evaluation of the represented trig polynomial.
  double eval(double x, double y) const;
  /// Mode carrying the largest |coefficient| (first in window order on ties).
  Mode dominant_mode() const;
};

/// Coefficients of p on the window; terms outside it are an error.
CoeffVector project(const TrigPoly& p, WindowPtr window);

/// Index folding for a source index (j, k) of the given parity:
/// the canonical mode a coefficient is read from, with sign +1 or -1, or sign
/// 0 when (j, k) lies outside the order-N box (or is the zero index).
std::pair<Mode, int> fold_index(Parity parity, int j, int k, int order);

/// Matrix of L f = {psi, f} from win_in to win_out. Both windows must hold the
/// same parity subspace and win_out.order() >= win_in.order() + max(m, n).
DenseMatrix assemble_L(const KolmogorovFlow& flow, const SpectralWindow& win_in,
                       const SpectralWindow& win_out);
DenseMatrix assemble_L_cos(const KolmogorovFlow& flow, const SpectralWindow& win_in,
                           const SpectralWindow& win_out);
DenseMatrix assemble_L_sin(const KolmogorovFlow& flow, const SpectralWindow& win_in,
                           const SpectralWindow& win_out);

struct QuadForm {
  WindowPtr window;
  KolmogorovFlow flow;
  /// v^T B v = MI(L f_v) / (2 pi^2)
  DenseMatrix B;
};

QuadForm assemble_quadform(const KolmogorovFlow& flow, WindowPtr window);

/// S = D^{-p/2} B D^{-p/2} with D = diag(j^2 + k^2). The Rayleigh quotient of
/// the homogeneous Sobolev order-p metric is minimized by the smallest
/// eigenvalue of S; f's coefficients are D^{-p/2} times its eigenvector.
struct ReducedForm {
  WindowPtr window;
  KolmogorovFlow flow;
  int p = 0;
  DenseMatrix S;
  /// D^{-p/2} per window mode.
  std::vector<double> weight;

  /// f coefficients for an eigenvector of S.
  CoeffVector to_coefficients(const std::vector<double>& eigenvector) const;
};

ReducedForm reduce_symmetric(const QuadForm& q, int p);

/// Restricts the search space by deleting the rows/columns of `zeroed`.
ReducedForm constrain(const ReducedForm& r, const std::vector<Mode>& zeroed);

inline constexpr std::int64_t kDefaultRationalCap = 1'000'000;

struct CertifiedResult {
  /// Rationalized f that was actually checked.
  TrigPoly field;
  /// Exact MI(L f) / pi^2.
  Rational q;
  bool conjugate_point() const { return q < 0; }
};

/// Rounds each coefficient to a rational with denominator <= cap, rebuilds f
/// exactly and evaluates the Misiolek index in exact arithmetic. Throws
/// std::invalid_argument for a zero vector and std::domain_error when the
/// rounded field lies in the kernel of L.
CertifiedResult certify_candidate(const CoeffVector& v, const KolmogorovFlow& flow,
                                  std::int64_t cap = kDefaultRationalCap);

/// Floating MI(L f) / pi^2 for coefficients given on any window.
double mi_float(const CoeffVector& v, const KolmogorovFlow& flow);

/// Default window order 2 max(m, n) + 4.
int default_order(const KolmogorovFlow& flow);

}  // namespace kolmo
