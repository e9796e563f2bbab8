#pragma once

// Two-sided numerical estimates of the K-functional generated by the radial
// derivative,
//   K_n(delta, f)_p = inf_h ||f - h||_p + delta^n ||h^{[n]}||_p.

#include <string>

#include "tapmeans/fourier.hpp"

namespace tapmeans {

/// ||f - h||_p + delta^n ||h^{[n]}||_p for one admissible h.
double k_objective(const FourierSeries& f, const FourierSeries& h, double delta, int n, double p,
                   const NormOptions& options = {});

/// (1/(2 n!)) (1-rho)^n M_p(rho, f, n), a lower bound for K_n(1-rho, f)_p.
/// Throws PreconditionViolation unless rho is in [1/2, 1).
double k_lower_lemma2(const FourierSeries& f, double rho, int n, double p,
                      const NormOptions& options = {});

/// ||f - A_{rho,n} f||_p + ((4^n-1)/3) (1-rho)^n M_p(sqrt(rho), f, n), an upper
/// bound for K_n(1-rho, f)_p. Same precondition as k_lower_lemma2.
double k_upper_lemma2(const FourierSeries& f, double rho, int n, double p,
                      const NormOptions& options = {});

struct MinimizeOptions {
  /// Degree D of the candidate polynomials h; negative means degree(f) + 8.
  int candidate_degree = -1;
  /// Stopping tolerance on the objective between coordinate sweeps.
  double tolerance = 1e-8;
  int max_sweeps = 50;
  /// Coordinate descent is skipped above this many active modes; the result
  /// then comes from the closed-form families alone.
  int max_coordinates = 512;
  /// Norm evaluation for the reported value; the search itself runs on a
  /// fixed grid of the same base size.
  NormOptions norm;
};

struct KMinimizeResult {
  /// Objective of the witness under MinimizeOptions::norm; an upper bound for K.
  double value = 0.0;
  FourierSeries witness;
  /// "zero", "identity", "lemma2", "tikhonov" or "coordinate".
  std::string family;
  bool converged = true;
  int sweeps = 0;
};

/// Minimizes the K objective over h_k = s_{|k|} f_k with |k| <= D. For p = 2
/// the optimum over this family is a Tikhonov shrinkage s = 1/(1 + g t^2),
/// t = delta^n |k|!/(|k|-n)!, found by a scalar search over g; other p add
/// cyclic golden-section coordinate descent (order k = 0, 1, 2, ...).
KMinimizeResult k_upper_minimize(const FourierSeries& f, double delta, int n, double p,
                                 const MinimizeOptions& options = {});

struct KBracket {
  double delta = 0.0;
  int n = 0;
  double p = 2.0;
  double lower = 0.0;
  double upper = 0.0;
  /// Which bound produced `upper`: "lemma2", "minimize:<family>", "zero" or "identity".
  std::string upper_witness;
  FourierSeries witness;
  double upper_lemma2 = kInfinity;
  double upper_minimize = kInfinity;
  double upper_zero = kInfinity;
  double upper_identity = kInfinity;
  /// False when delta > 1/2, where the lower bound does not apply (lower = 0).
  bool lower_available = true;
  /// True if the numerical lower bound exceeded the upper one and was clamped.
  bool lower_clamped = false;
  bool minimizer_converged = true;
};

struct KBracketOptions {
  bool minimize = true;
  MinimizeOptions minimize_options;
};

/// Lower bound from Lemma 2 at rho = 1 - delta; upper bound is the least of
/// the Lemma-2 bound, the minimizer, ||f||_p and delta^n ||f^{[n]}||_p.
KBracket k_bracket(const FourierSeries& f, double delta, int n, double p,
                   const KBracketOptions& options = {});

}  // namespace tapmeans
