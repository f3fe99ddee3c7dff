#include "cvent/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cvent/errors.hpp"

namespace cvent {

namespace {

void require_cutoff(int cutoff) {
  if (cutoff < 1) {
    throw InvalidSpec("Fock cutoff must be >= 1, got " + std::to_string(cutoff));
  }
}

// blocks[N](k, j) = ⟨k, N−k| B |j, N−j⟩. Built column by column from the
// N−1 block: B a† B† = (a† − b†)/√2 and B b† B† = (a† + b†)/√2.
std::vector<Eigen::MatrixXd> beam_splitter_blocks(int max_total) {
  std::vector<Eigen::MatrixXd> blocks(max_total + 1);
  blocks[0] = Eigen::MatrixXd::Ones(1, 1);
  for (int total = 1; total <= max_total; ++total) {
    const Eigen::MatrixXd& prev = blocks[total - 1];
    Eigen::MatrixXd cur = Eigen::MatrixXd::Zero(total + 1, total + 1);
    for (int j = 0; j <= total; ++j) {
      const int src = j == 0 ? 0 : j - 1;
      const double sign_b = j == 0 ? 1.0 : -1.0;
      const double scale = 1.0 / std::sqrt(2.0 * (j == 0 ? total : j));
      for (int k = 0; k < total; ++k) {
        const double v = prev(k, src);
        if (v == 0.0) continue;
        cur(k + 1, j) += scale * std::sqrt(static_cast<double>(k + 1)) * v;
        cur(k, j) += sign_b * scale * std::sqrt(static_cast<double>(total - k)) * v;
      }
    }
    blocks[total] = std::move(cur);
  }
  return blocks;
}

double gaussian_of_quadrature(const Eigen::MatrixXcd& rho, Quadrature quadrature) {
  const int cutoff = static_cast<int>(rho.rows()) - 1;
  const Eigen::MatrixXcd q = quadrature_matrix(quadrature, cutoff);
  const double mean = (rho * q).trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(q);
  const Eigen::MatrixXcd& vecs = solver.eigenvectors();
  const Eigen::VectorXd& vals = solver.eigenvalues();
  const Eigen::MatrixXcd rotated = vecs.adjoint() * rho * vecs;
  double sum = 0.0;
  for (int k = 0; k < vals.size(); ++k) {
    const double shifted = vals[k] - mean;
    sum += std::exp(-2.0 * shifted * shifted) * rotated(k, k).real();
  }
  return sum;
}

double checked_gaussian(const Eigen::MatrixXcd& rho, Quadrature quadrature, double tolerance) {
  const double base = gaussian_of_quadrature(rho, quadrature);
  const auto dim = rho.rows();
  Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(2 * dim - 1, 2 * dim - 1);
  padded.topLeftCorner(dim, dim) = rho;
  const double refined = gaussian_of_quadrature(padded, quadrature);
  if (std::abs(refined - base) > tolerance) {
    throw ConvergenceFailure("quadrature Gaussian expectation moved by " +
                             std::to_string(std::abs(refined - base)) +
                             " when the cutoff was doubled");
  }
  return base;
}

}  // namespace

// --- SingleModeState -------------------------------------------------------

SingleModeState::SingleModeState(int cutoff) {
  require_cutoff(cutoff);
  amps_ = Eigen::VectorXcd::Zero(cutoff + 1);
}

SingleModeState::SingleModeState(Eigen::VectorXcd amplitudes, double truncation_loss)
    : amps_(std::move(amplitudes)), loss_(truncation_loss) {
  require_cutoff(static_cast<int>(amps_.size()) - 1);
}

SingleModeState SingleModeState::fock(int n, int cutoff) {
  SingleModeState s(cutoff);
  if (n < 0 || n > cutoff) {
    throw CutoffTooSmall("Fock state |" + std::to_string(n) + "> outside cutoff " +
                         std::to_string(cutoff));
  }
  s.amps_[n] = 1.0;
  return s;
}

double SingleModeState::tail_mass() const {
  const double norm2 = norm_squared();
  if (norm2 <= kZeroNormSquared) return 0.0;
  return std::norm(amps_[cutoff()]) / norm2;
}

SingleModeState SingleModeState::normalized() const {
  const double norm2 = norm_squared();
  if (norm2 <= kZeroNormSquared) {
    throw DegenerateState("cannot normalize a zero single-mode vector");
  }
  return SingleModeState(amps_ / std::sqrt(norm2), loss_);
}

SingleModeState SingleModeState::with_cutoff(int cutoff) const {
  require_cutoff(cutoff);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(cutoff + 1);
  const int keep = std::min(cutoff, this->cutoff()) + 1;
  out.head(keep) = amps_.head(keep);
  double loss = loss_;
  const double norm2 = norm_squared();
  if (keep < amps_.size() && norm2 > kZeroNormSquared) {
    loss += amps_.tail(amps_.size() - keep).squaredNorm() / norm2;
  }
  return SingleModeState(std::move(out), loss);
}

// --- TwoModeState ----------------------------------------------------------

TwoModeState::TwoModeState(int cutoff) {
  require_cutoff(cutoff);
  amps_ = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
}

TwoModeState::TwoModeState(Eigen::MatrixXcd amplitudes, double truncation_loss)
    : amps_(std::move(amplitudes)), loss_(truncation_loss) {
  if (amps_.rows() != amps_.cols()) {
    throw InvalidSpec("two-mode amplitudes must use the same cutoff on both modes");
  }
  require_cutoff(static_cast<int>(amps_.rows()) - 1);
}

TwoModeState TwoModeState::fock(int n_a, int n_b, int cutoff) {
  TwoModeState s(cutoff);
  if (n_a < 0 || n_b < 0 || n_a > cutoff || n_b > cutoff) {
    throw CutoffTooSmall("Fock state outside cutoff " + std::to_string(cutoff));
  }
  s.amps_(n_a, n_b) = 1.0;
  return s;
}

TwoModeState TwoModeState::product(const SingleModeState& a, const SingleModeState& b) {
  if (a.cutoff() != b.cutoff()) {
    throw InvalidSpec("product state factors must share a cutoff");
  }
  return TwoModeState(a.amplitudes() * b.amplitudes().transpose(),
                      a.truncation_loss() + b.truncation_loss());
}

double TwoModeState::tail_mass() const {
  const double norm2 = norm_squared();
  if (norm2 <= kZeroNormSquared) return 0.0;
  const int c = cutoff();
  const double edge = amps_.row(c).squaredNorm() + amps_.col(c).squaredNorm() -
                      std::norm(amps_(c, c));
  return edge / norm2;
}

TwoModeState TwoModeState::normalized() const {
  const double norm2 = norm_squared();
  if (norm2 <= kZeroNormSquared) {
    throw DegenerateState("cannot normalize a zero two-mode vector");
  }
  return TwoModeState(amps_ / std::sqrt(norm2), loss_);
}

TwoModeState TwoModeState::with_cutoff(int cutoff) const {
  require_cutoff(cutoff);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  const int keep = std::min(cutoff, this->cutoff()) + 1;
  out.topLeftCorner(keep, keep) = amps_.topLeftCorner(keep, keep);
  double loss = loss_;
  const double norm2 = norm_squared();
  if (keep < amps_.rows() && norm2 > kZeroNormSquared) {
    loss += (norm2 - out.squaredNorm()) / norm2;
  }
  return TwoModeState(std::move(out), loss);
}

TwoModeState TwoModeState::scaled(cplx factor) const {
  return TwoModeState(amps_ * factor, loss_);
}

// --- DensityMatrix ---------------------------------------------------------

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  const Eigen::MatrixXcd herm = 0.5 * (entries + entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double DensityMatrix::hermiticity_defect() const {
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

// --- Ladder operators ------------------------------------------------------

SingleModeState annihilate(const SingleModeState& state) {
  const int c = state.cutoff();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(c + 1);
  for (int n = 0; n < c; ++n) {
    out[n] = std::sqrt(static_cast<double>(n + 1)) * state[n + 1];
  }
  return SingleModeState(std::move(out), state.truncation_loss());
}

TwoModeState annihilate(const TwoModeState& state, Mode mode) {
  const int c = state.cutoff();
  const Eigen::MatrixXcd& in = state.amplitudes();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c + 1, c + 1);
  for (int n = 0; n < c; ++n) {
    const double f = std::sqrt(static_cast<double>(n + 1));
    if (mode == Mode::A) {
      out.row(n) = f * in.row(n + 1);
    } else {
      out.col(n) = f * in.col(n + 1);
    }
  }
  return TwoModeState(std::move(out), state.truncation_loss());
}

SingleModeState create(const SingleModeState& state, double tail_tolerance) {
  const int c = state.cutoff();
  const double in_norm2 = state.norm_squared();
  const double dropped = (c + 1) * std::norm(state[c]);
  const double relative = in_norm2 > kZeroNormSquared ? dropped / in_norm2 : 0.0;
  if (relative > tail_tolerance) {
    throw TruncationOverflow("creation operator pushed " + std::to_string(relative) +
                             " of the norm past cutoff " + std::to_string(c));
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(c + 1);
  for (int n = 0; n < c; ++n) {
    out[n + 1] = std::sqrt(static_cast<double>(n + 1)) * state[n];
  }
  return SingleModeState(std::move(out), state.truncation_loss() + relative);
}

TwoModeState create(const TwoModeState& state, Mode mode, double tail_tolerance) {
  const int c = state.cutoff();
  const Eigen::MatrixXcd& in = state.amplitudes();
  const double in_norm2 = state.norm_squared();
  const double edge = mode == Mode::A ? in.row(c).squaredNorm() : in.col(c).squaredNorm();
  const double relative = in_norm2 > kZeroNormSquared ? (c + 1) * edge / in_norm2 : 0.0;
  if (relative > tail_tolerance) {
    throw TruncationOverflow("creation operator pushed " + std::to_string(relative) +
                             " of the norm past cutoff " + std::to_string(c));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c + 1, c + 1);
  for (int n = 0; n < c; ++n) {
    const double f = std::sqrt(static_cast<double>(n + 1));
    if (mode == Mode::A) {
      out.row(n + 1) = f * in.row(n);
    } else {
      out.col(n + 1) = f * in.col(n);
    }
  }
  return TwoModeState(std::move(out), state.truncation_loss() + relative);
}

// --- Displacement ----------------------------------------------------------

Eigen::MatrixXcd displacement_matrix(cplx amplitude, int cutoff) {
  require_cutoff(cutoff);
  const int dim = cutoff + 1;
  if (amplitude == cplx(0.0, 0.0)) return Eigen::MatrixXcd::Identity(dim, dim);

  // For m = n + k ≥ n:  ⟨m|D|n⟩ = √(n!/m!) α^k e^{−|α|²/2} L_n^{(k)}(|α|²)
  // and ⟨n|D|m⟩ = √(n!/m!) (−α*)^k e^{−|α|²/2} L_n^{(k)}(|α|²).
  const double x = std::norm(amplitude);
  const double log_mod = 0.5 * std::log(x);
  const cplx unit = amplitude / std::abs(amplitude);
  const cplx neg_conj_unit = -std::conj(unit);

  std::vector<double> log_fact(dim);
  for (int n = 0; n < dim; ++n) log_fact[n] = std::lgamma(n + 1.0);

  Eigen::MatrixXcd d(dim, dim);
  std::vector<double> lag(dim);
  cplx unit_pow = 1.0;
  cplx neg_conj_pow = 1.0;
  for (int k = 0; k < dim; ++k) {
    const int len = dim - k;
    lag[0] = 1.0;
    if (len > 1) lag[1] = 1.0 + k - x;
    for (int j = 1; j + 1 < len; ++j) {
      lag[j + 1] = ((2.0 * j + 1.0 + k - x) * lag[j] - (j + k) * lag[j - 1]) / (j + 1.0);
    }
    for (int n = 0; n < len; ++n) {
      const int m = n + k;
      const double pref =
          std::exp(0.5 * (log_fact[n] - log_fact[m]) + k * log_mod - 0.5 * x) * lag[n];
      d(m, n) = pref * unit_pow;
      d(n, m) = pref * neg_conj_pow;
    }
    unit_pow *= unit;
    neg_conj_pow *= neg_conj_unit;
  }
  return d;
}

SingleModeState displace(const SingleModeState& state, cplx amplitude) {
  const int c = state.cutoff();
  if (std::norm(amplitude) > c / 4.0) {
    throw CutoffTooSmall("displacement |α|² = " + std::to_string(std::norm(amplitude)) +
                         " exceeds cutoff/4 = " + std::to_string(c / 4.0));
  }
  Eigen::VectorXcd out = displacement_matrix(amplitude, c) * state.amplitudes();
  const double in_norm2 = state.norm_squared();
  double loss = state.truncation_loss();
  if (in_norm2 > kZeroNormSquared) {
    loss += std::max(0.0, in_norm2 - out.squaredNorm()) / in_norm2;
  }
  return SingleModeState(std::move(out), loss);
}

// --- Beam splitter ---------------------------------------------------------

TwoModeState beam_splitter_50_50(const TwoModeState& state, double tail_tolerance) {
  const int c = state.cutoff();
  const Eigen::MatrixXcd& in = state.amplitudes();
  const auto blocks = beam_splitter_blocks(2 * c);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c + 1, c + 1);
  double dropped = 0.0;
  for (int total = 0; total <= 2 * c; ++total) {
    const int lo = std::max(0, total - c);
    const int hi = std::min(total, c);
    Eigen::VectorXcd column = Eigen::VectorXcd::Zero(total + 1);
    bool any = false;
    for (int j = lo; j <= hi; ++j) {
      column[j] = in(j, total - j);
      any = any || column[j] != cplx(0.0, 0.0);
    }
    if (!any) continue;
    const Eigen::VectorXcd mixed = blocks[total].cast<cplx>() * column;
    for (int k = 0; k <= total; ++k) {
      if (k >= lo && k <= hi) {
        out(k, total - k) = mixed[k];
      } else {
        dropped += std::norm(mixed[k]);
      }
    }
  }
  const double in_norm2 = state.norm_squared();
  const double relative = in_norm2 > kZeroNormSquared ? dropped / in_norm2 : 0.0;
  if (relative > tail_tolerance) {
    throw TruncationOverflow("beam splitter pushed " + std::to_string(relative) +
                             " of the norm past cutoff " + std::to_string(c));
  }
  return TwoModeState(std::move(out), state.truncation_loss() + relative);
}

// --- Reduced states and moments -------------------------------------------

DensityMatrix partial_trace(const TwoModeState& state, Mode keep) {
  const double norm2 = state.norm_squared();
  if (norm2 <= kZeroNormSquared) {
    throw DegenerateState("partial trace of a zero vector");
  }
  const Eigen::MatrixXcd& psi = state.amplitudes();
  if (keep == Mode::A) {
    return DensityMatrix{psi * psi.adjoint() / norm2};
  }
  return DensityMatrix{psi.transpose() * psi.conjugate() / norm2};
}

MomentSet moments(const TwoModeState& state) {
  const double norm2 = state.norm_squared();
  if (norm2 <= kZeroNormSquared) {
    throw DegenerateState("moments of a zero vector");
  }
  const int c = state.cutoff();
  const Eigen::MatrixXcd& psi = state.amplitudes();
  MomentSet m{};
  for (int i = 0; i <= c; ++i) {
    for (int j = 0; j <= c; ++j) {
      const cplx amp = psi(i, j);
      const double p = std::norm(amp);
      m.n_a += static_cast<double>(i) * p;
      m.n_b += static_cast<double>(j) * p;
      if (i < c) m.mean_a += std::conj(amp) * std::sqrt(i + 1.0) * psi(i + 1, j);
      if (j < c) m.mean_b += std::conj(amp) * std::sqrt(j + 1.0) * psi(i, j + 1);
      if (i < c && j < c) {
        const double f = std::sqrt((i + 1.0) * (j + 1.0));
        m.ab += std::conj(amp) * f * psi(i + 1, j + 1);
        m.a_dag_b_dag += std::conj(psi(i + 1, j + 1)) * f * amp;
      }
    }
  }
  m.mean_a /= norm2;
  m.mean_b /= norm2;
  m.n_a /= norm2;
  m.n_b /= norm2;
  m.ab /= norm2;
  m.a_dag_b_dag /= norm2;
  return m;
}

// --- Quadratures -----------------------------------------------------------

Eigen::MatrixXcd quadrature_matrix(Quadrature quadrature, int cutoff) {
  require_cutoff(cutoff);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  if (quadrature == Quadrature::X) return 0.5 * (a + a.adjoint());
  return cplx(0.0, -0.5) * (a - a.adjoint());
}

double quadrature_mean(const SingleModeState& state, Quadrature quadrature) {
  const double norm2 = state.norm_squared();
  if (norm2 <= kZeroNormSquared) throw DegenerateState("quadrature mean of a zero vector");
  const Eigen::MatrixXcd q = quadrature_matrix(quadrature, state.cutoff());
  return state.amplitudes().dot(q * state.amplitudes()).real() / norm2;
}

double hermitian_function_expectation(const SingleModeState& state, Quadrature quadrature,
                                      double tolerance) {
  const double norm2 = state.norm_squared();
  if (norm2 <= kZeroNormSquared) {
    throw DegenerateState("expectation value in a zero vector");
  }
  const Eigen::MatrixXcd rho = state.amplitudes() * state.amplitudes().adjoint() / norm2;
  return checked_gaussian(rho, quadrature, tolerance);
}

double hermitian_function_expectation(const TwoModeState& state, Quadrature quadrature,
                                      Mode mode, double tolerance) {
  return checked_gaussian(partial_trace(state, mode).entries, quadrature, tolerance);
}

}  // namespace cvent
