#pragma once

// Truncated Fock-space algebra for one and two bosonic modes.
//
// States are dense amplitude arrays over photon numbers 0..cutoff. Operators
// act on copies and never renormalize; callers decide when to normalize and
// get a DegenerateState error instead of NaNs when the vector is zero.
//
// Beam-splitter convention: B† a B = (a + b)/√2, B† b B = (b − a)/√2, so
// B |α⟩|0⟩ = |α/√2⟩|−α/√2⟩. This is the sign choice under which the
// subtracted-resource closed forms hold verbatim; the opposite convention
// differs by b → −b.

#include <complex>

#include <Eigen/Dense>

namespace cvent {

using cplx = std::complex<double>;

enum class Mode { A, B };
enum class Quadrature { X, P };

inline constexpr int kDefaultCutoff = 40;
// Largest relative probability mass an operation may push past the cutoff.
inline constexpr double kTailTolerance = 1e-12;
// Squared norm below which a vector counts as zero.
inline constexpr double kZeroNormSquared = 1e-28;
// Shift allowed when a metric is recomputed at a larger cutoff.
inline constexpr double kConvergenceTolerance = 1e-9;

class SingleModeState {
 public:
  explicit SingleModeState(int cutoff);
  explicit SingleModeState(Eigen::VectorXcd amplitudes, double truncation_loss = 0.0);

  static SingleModeState fock(int n, int cutoff);

  int cutoff() const { return static_cast<int>(amps_.size()) - 1; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  cplx operator[](int n) const { return amps_[n]; }

  double norm_squared() const { return amps_.squaredNorm(); }
  // |amplitude[cutoff]|² relative to the squared norm.
  double tail_mass() const;
  bool converged(double tail_tolerance = kTailTolerance) const {
    return tail_mass() < tail_tolerance;
  }
  // Accumulated relative probability dropped by truncation so far.
  double truncation_loss() const { return loss_; }

  // Throws DegenerateState for a zero vector.
  SingleModeState normalized() const;
  // Zero-pads, or truncates and books the dropped mass as loss.
  SingleModeState with_cutoff(int cutoff) const;

 private:
  Eigen::VectorXcd amps_;
  double loss_ = 0.0;
};

// Amplitudes indexed (n_A, n_B); both modes share one cutoff.
class TwoModeState {
 public:
  explicit TwoModeState(int cutoff);
  explicit TwoModeState(Eigen::MatrixXcd amplitudes, double truncation_loss = 0.0);

  static TwoModeState fock(int n_a, int n_b, int cutoff);
  static TwoModeState vacuum(int cutoff) { return fock(0, 0, cutoff); }
  // |a⟩ ⊗ |b⟩; the factors must share a cutoff.
  static TwoModeState product(const SingleModeState& a, const SingleModeState& b);

  int cutoff() const { return static_cast<int>(amps_.rows()) - 1; }
  const Eigen::MatrixXcd& amplitudes() const { return amps_; }
  cplx operator()(int n_a, int n_b) const { return amps_(n_a, n_b); }

  double norm_squared() const { return amps_.squaredNorm(); }
  // Mass on the outermost Fock shell of either mode, relative to the norm.
  double tail_mass() const;
  double truncation_loss() const { return loss_; }

  TwoModeState normalized() const;
  TwoModeState with_cutoff(int cutoff) const;
  TwoModeState scaled(cplx factor) const;

 private:
  Eigen::MatrixXcd amps_;
  double loss_ = 0.0;
};

struct DensityMatrix {
  Eigen::MatrixXcd entries;

  int dimension() const { return static_cast<int>(entries.rows()); }
  double trace() const { return entries.trace().real(); }
  // Ascending eigenvalues of the Hermitian part.
  Eigen::VectorXd eigenvalues() const;
  // Largest |ρ − ρ†| entry.
  double hermiticity_defect() const;
};

// Expectation values entering the second-order EPR variance.
struct MomentSet {
  cplx mean_a;
  cplx mean_b;
  cplx n_a;
  cplx n_b;
  cplx ab;
  cplx a_dag_b_dag;
};

SingleModeState annihilate(const SingleModeState& state);
TwoModeState annihilate(const TwoModeState& state, Mode mode);

// Throws TruncationOverflow when the mass shifted past the cutoff exceeds
// tail_tolerance (relative to the input norm).
SingleModeState create(const SingleModeState& state, double tail_tolerance = kTailTolerance);
TwoModeState create(const TwoModeState& state, Mode mode, double tail_tolerance = kTailTolerance);

// Exact matrix elements ⟨m|D(α)|n⟩ for m, n ≤ cutoff (not the exponential of
// a truncated generator). Stable for |α|² up to a few times the cutoff.
Eigen::MatrixXcd displacement_matrix(cplx amplitude, int cutoff);

// Throws CutoffTooSmall unless |amplitude|² ≤ cutoff/4.
SingleModeState displace(const SingleModeState& state, cplx amplitude);

// Throws TruncationOverflow if more than tail_tolerance of the mass lands on
// Fock states beyond the cutoff.
TwoModeState beam_splitter_50_50(const TwoModeState& state,
                                 double tail_tolerance = kTailTolerance);

// Reduced state of the kept mode, normalized by the input norm.
DensityMatrix partial_trace(const TwoModeState& state, Mode keep);

MomentSet moments(const TwoModeState& state);

// Truncated matrix of x = (a + a†)/2 or p = −i(a − a†)/2.
Eigen::MatrixXcd quadrature_matrix(Quadrature quadrature, int cutoff);
double quadrature_mean(const SingleModeState& state, Quadrature quadrature);

// ⟨exp(−2(Q − ⟨Q⟩)²)⟩ from the eigendecomposition of the truncated
// quadrature matrix. The value is recomputed with the cutoff doubled and
// ConvergenceFailure is thrown if it moves by more than `tolerance`.
double hermitian_function_expectation(const SingleModeState& state, Quadrature quadrature,
                                      double tolerance = kConvergenceTolerance);
double hermitian_function_expectation(const TwoModeState& state, Quadrature quadrature,
                                      Mode mode, double tolerance = kConvergenceTolerance);

}  // namespace cvent
