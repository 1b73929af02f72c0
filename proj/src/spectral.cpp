#include "kolmo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace kolmo {

std::string to_string(Subspace s) {
  switch (s) {
    case Subspace::kCos:
      return "cos";
    case Subspace::kSin:
      return "sin";
    case Subspace::kFull:
      return "full";
  }
  return "?";
}

Subspace parse_subspace(const std::string& text) {
  if (text == "cos") return Subspace::kCos;
  if (text == "sin") return Subspace::kSin;
  if (text == "full") return Subspace::kFull;
  throw std::invalid_argument("unknown subspace '" + text + "' (expected cos|sin|full)");
}

namespace {

std::vector<Mode> window_modes(int order, Subspace subspace) {
  std::vector<Mode> modes;
  for (int j = 0; j <= order; ++j) {
    for (int k = -order; k <= order; ++k) {
      if (j == 0 && k <= 0) continue;
      if (subspace != Subspace::kSin) modes.push_back(Mode{Parity::kCos, j, k});
      if (subspace != Subspace::kCos) modes.push_back(Mode{Parity::kSin, j, k});
    }
  }
  return modes;
}

}  // namespace

SpectralWindow::SpectralWindow(int order, Subspace subspace)
    : SpectralWindow(order, subspace, window_modes(order, subspace)) {
  if (order < 1) throw std::invalid_argument("SpectralWindow: order must be >= 1");
}

SpectralWindow::SpectralWindow(int order, Subspace subspace, std::vector<Mode> modes)
    : order_(order), subspace_(subspace), modes_(std::move(modes)) {
  for (std::size_t i = 0; i < modes_.size(); ++i) index_.emplace(modes_[i], i);
}

std::optional<std::size_t> SpectralWindow::find(const Mode& mode) const {
  auto it = index_.find(mode);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SpectralWindow::contains(Parity parity) const {
  return subspace_ == Subspace::kFull ||
         (parity == Parity::kCos) == (subspace_ == Subspace::kCos);
}

SpectralWindow SpectralWindow::without(const std::vector<Mode>& removed) const {
  std::set<Mode> drop;
  for (const Mode& m : removed) {
    if (!find(m)) {
      throw std::invalid_argument("constrain: mode " + to_string(m) + " is not in the window");
    }
    drop.insert(m);
  }
  std::vector<Mode> kept;
  for (const Mode& m : modes_) {
    if (!drop.contains(m)) kept.push_back(m);
  }
  if (kept.empty()) throw std::invalid_argument("constrain: no modes left in the window");
  return SpectralWindow(order_, subspace_, std::move(kept));
}

CoeffVector::CoeffVector(WindowPtr w, std::vector<double> v)
    : window(std::move(w)), values(std::move(v)) {
  if (!window || values.size() != window->size()) {
    throw std::invalid_argument("CoeffVector: length does not match the window");
  }
}

double CoeffVector::eval(double x, double y) const {
  double s = 0.0;
  const auto& modes = window->modes();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (values[i] == 0.0) continue;
    const double theta = modes[i].j * x + modes[i].k * y;
    s += values[i] * (modes[i].parity == Parity::kCos ? std::cos(theta) : std::sin(theta));
  }
  return s;
}

Mode CoeffVector::dominant_mode() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i]) > std::abs(values[best])) best = i;
  }
  return window->modes().at(best);
}

CoeffVector project(const TrigPoly& p, WindowPtr window) {
  std::vector<double> values(window->size(), 0.0);
  for (const auto& [mode, c] : p.terms()) {
    auto idx = window->find(mode);
    if (!idx) {
      throw std::invalid_argument("project: mode " + to_string(mode) +
                                  " does not fit the window");
    }
    values[*idx] = to_double(c);
  }
  return CoeffVector(std::move(window), std::move(values));
}

std::pair<Mode, int> fold_index(Parity parity, int j, int k, int order) {
  if (std::abs(j) > order || std::abs(k) > order || (j == 0 && k == 0)) return {Mode{parity, j, k}, 0};
  auto [mode, s] = canonical_mode(parity, j, k);
  return {mode, s};
}

namespace {

struct Entry {
  std::size_t col;
  double value;
};

// Rows of L in the output window; each holds at most four gathered entries.
//
// Canonical coefficient of parity(jx + ky) in {psi, f}:
//   1/4 [ (mk - nj)(A_{j-m,k-n} - A_{j+m,k+n})
//       + (mk + nj)(A_{j-m,k+n} - A_{j+m,k-n}) ]
// where A is the even (cos) or odd (sin) extension of the input coefficients.
std::vector<std::vector<Entry>> sparse_L(const KolmogorovFlow& flow,
                                         const SpectralWindow& win_in,
                                         const SpectralWindow& win_out) {
  if (win_in.subspace() != win_out.subspace()) {
    throw std::invalid_argument("assemble_L: windows hold different subspaces");
  }
  const int m = flow.m(), n = flow.n();
  if (win_out.order() < win_in.order() + std::max(m, n)) {
    throw std::invalid_argument("assemble_L: output window order " +
                                std::to_string(win_out.order()) + " < " +
                                std::to_string(win_in.order() + std::max(m, n)) +
                                " would drop modes of L f");
  }
  std::vector<std::vector<Entry>> rows(win_out.size());
  for (std::size_t r = 0; r < win_out.size(); ++r) {
    const Mode& out = win_out.modes()[r];
    const int j = out.j, k = out.k;
    const double minus = static_cast<double>(m) * k - static_cast<double>(n) * j;
    const double plus = static_cast<double>(m) * k + static_cast<double>(n) * j;
    const struct {
      int dj, dk;
      double weight;
    } sources[] = {
        {j - m, k - n, minus},
        {j + m, k + n, -minus},
        {j - m, k + n, plus},
        {j + m, k - n, -plus},
    };
    auto& row = rows[r];
    for (const auto& src : sources) {
      if (src.weight == 0.0) continue;
      auto [mode, s] = fold_index(out.parity, src.dj, src.dk, win_in.order());
      if (s == 0) continue;
      auto col = win_in.find(mode);
      if (!col) continue;
      const double value = 0.25 * src.weight * s;
      auto it = std::find_if(row.begin(), row.end(),
                             [&](const Entry& e) { return e.col == *col; });
      if (it == row.end()) {
        row.push_back({*col, value});
      } else {
        it->value += value;
      }
    }
  }
  return rows;
}

DenseMatrix densify(const std::vector<std::vector<Entry>>& rows, std::size_t cols) {
  DenseMatrix M(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const Entry& e : rows[r]) M(r, e.col) += e.value;
  }
  return M;
}

}  // namespace

DenseMatrix assemble_L(const KolmogorovFlow& flow, const SpectralWindow& win_in,
                       const SpectralWindow& win_out) {
  return densify(sparse_L(flow, win_in, win_out), win_in.size());
}

DenseMatrix assemble_L_cos(const KolmogorovFlow& flow, const SpectralWindow& win_in,
                           const SpectralWindow& win_out) {
  if (win_in.subspace() != Subspace::kCos || win_out.subspace() != Subspace::kCos) {
    throw std::invalid_argument("assemble_L_cos: windows must be cosine-only");
  }
  return assemble_L(flow, win_in, win_out);
}

DenseMatrix assemble_L_sin(const KolmogorovFlow& flow, const SpectralWindow& win_in,
                           const SpectralWindow& win_out) {
  if (win_in.subspace() != Subspace::kSin || win_out.subspace() != Subspace::kSin) {
    throw std::invalid_argument("assemble_L_sin: windows must be sine-only");
  }
  return assemble_L(flow, win_in, win_out);
}

QuadForm assemble_quadform(const KolmogorovFlow& flow, WindowPtr window) {
  const SpectralWindow ext(window->order() + std::max(flow.m(), flow.n()),
                           window->subspace());
  const auto rows = sparse_L(flow, *window, ext);
  const double lambda2 = static_cast<double>(flow.lambda2());
  DenseMatrix B(window->size(), window->size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double d = static_cast<double>(ext.modes()[r].norm2()) - lambda2;
    if (d == 0.0) continue;
    for (const Entry& a : rows[r]) {
      for (const Entry& b : rows[r]) B(a.col, b.col) += d * a.value * b.value;
    }
  }
  return QuadForm{std::move(window), flow, std::move(B)};
}

CoeffVector ReducedForm::to_coefficients(const std::vector<double>& eigenvector) const {
  if (eigenvector.size() != weight.size()) {
    throw std::invalid_argument("to_coefficients: length does not match the window");
  }
  std::vector<double> v(weight.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = weight[i] * eigenvector[i];
  return CoeffVector(window, std::move(v));
}

ReducedForm reduce_symmetric(const QuadForm& q, int p) {
  if (p < 0) throw std::invalid_argument("reduce_symmetric: p must be >= 0");
  const auto& modes = q.window->modes();
  std::vector<double> weight(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    weight[i] = std::pow(static_cast<double>(modes[i].norm2()), -0.5 * p);
  }
  DenseMatrix S = q.B;
  for (std::size_t i = 0; i < S.rows(); ++i) {
    for (std::size_t j = 0; j < S.cols(); ++j) S(i, j) *= weight[i] * weight[j];
  }
  return ReducedForm{q.window, q.flow, p, std::move(S), std::move(weight)};
}

ReducedForm constrain(const ReducedForm& r, const std::vector<Mode>& zeroed) {
  if (zeroed.empty()) return r;
  auto window = std::make_shared<const SpectralWindow>(r.window->without(zeroed));
  std::vector<std::size_t> keep;
  keep.reserve(window->size());
  for (const Mode& m : window->modes()) keep.push_back(*r.window->find(m));
  DenseMatrix S(keep.size(), keep.size());
  std::vector<double> weight(keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    weight[a] = r.weight[keep[a]];
    for (std::size_t b = 0; b < keep.size(); ++b) S(a, b) = r.S(keep[a], keep[b]);
  }
  return ReducedForm{std::move(window), r.flow, r.p, std::move(S), std::move(weight)};
}

CertifiedResult certify_candidate(const CoeffVector& v, const KolmogorovFlow& flow,
                                  std::int64_t cap) {
  if (std::all_of(v.values.begin(), v.values.end(), [](double x) { return x == 0.0; })) {
    throw std::invalid_argument("certify_candidate: zero coefficient vector");
  }
  TrigPoly f;
  const auto& modes = v.window->modes();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (v.values[i] == 0.0) continue;
    f.add_term(modes[i].parity, modes[i].j, modes[i].k, rationalize(v.values[i], cap));
  }
  const TrigPoly phi = flow.bracket(f);
  if (phi.is_zero()) {
    throw std::domain_error(
        "certify_candidate: rationalized field lies in the kernel of the bracket");
  }
  Rational q = mi_exact(phi, flow);
  return CertifiedResult{std::move(f), std::move(q)};
}

double mi_float(const CoeffVector& v, const KolmogorovFlow& flow) {
  const QuadForm q = assemble_quadform(flow, v.window);
  return 2.0 * dot(v.values, q.B.apply(v.values));
}

int default_order(const KolmogorovFlow& flow) { return 2 * std::max(flow.m(), flow.n()) + 4; }

}  // namespace kolmo
