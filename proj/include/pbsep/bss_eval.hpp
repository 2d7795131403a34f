// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef PBSEP_BSS_EVAL_HPP_
#define PBSEP_BSS_EVAL_HPP_

#include <Eigen/Dense>
#include <vector>

#include "pbsep/audio.hpp"

namespace pbsep {

/// Separation quality in dB. Values are +infinity when the corresponding
/// error energy vanishes and -infinity when the estimate carries no target.
struct SeparationMetrics {
  double sdr_db = 0.0;
  double sir_db = 0.0;
  double sar_db = 0.0;
};

struct Decomposition {
  Eigen::VectorXd s_target;
  Eigen::VectorXd e_interf;
  Eigen::VectorXd e_artif;
};

/// Least-squares projector onto the span of delayed references
/// (delays 0..filter_len-1, zero-filled). Building one is the expensive part
/// of BSS evaluation, so it is cached and reused across estimates; the
/// pseudo-inverse drops singular values below 1e-10 of the largest.
class DelayProjector {
 public:
  DelayProjector(const std::vector<Eigen::VectorXd>& references,
                 int filter_len);

  /// Splits the estimate into target / interference / artifact components.
  /// The three parts sum to the estimate and are pairwise orthogonal.
  Decomposition decompose(const Eigen::VectorXd& estimate,
                          int target_index) const;

  long length() const { return embedded_.rows(); }
  int source_count() const { return source_count_; }

 private:
  Eigen::VectorXd project(const Eigen::VectorXd& estimate, long col_begin,
                          long col_count) const;

  Eigen::MatrixXd embedded_;  // n x (sources * filter_len)
  int filter_len_ = 0;
  int source_count_ = 0;
  // Eigendecompositions of the per-target and full Gram matrices.
  std::vector<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>> target_gram_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full_gram_;
};

/// One-shot decomposition (builds a projector internally).
Decomposition decompose(const AudioClip& estimate,
                        const std::vector<AudioClip>& references,
                        int target_index, int filter_len);

/// SDR = 10 log10(|s|^2 / |e_i + e_a|^2), SIR = 10 log10(|s|^2 / |e_i|^2),
/// SAR = 10 log10(|s + e_i|^2 / |e_a|^2).
SeparationMetrics metrics_from_decomposition(const Eigen::VectorXd& s_target,
                                             const Eigen::VectorXd& e_interf,
                                             const Eigen::VectorXd& e_artif);

struct PairMetrics {
  SeparationMetrics source_a;
  SeparationMetrics source_b;
  SeparationMetrics mean;  // arithmetic, infinity-propagating
};

/// Evaluates estimate k against reference k for k in {0,1}. The pairing is
/// fixed; no permutation search.
PairMetrics bss_eval_pair(const AudioClip& estimate_a,
                          const AudioClip& estimate_b,
                          const AudioClip& reference_a,
                          const AudioClip& reference_b, int filter_len);

/// Same evaluation against an already-built projector (reference span reused
/// across many estimates, e.g. an alpha sweep).
PairMetrics bss_eval_pair(const Eigen::VectorXd& estimate_a,
                          const Eigen::VectorXd& estimate_b,
                          const DelayProjector& projector);

}  // namespace pbsep

#endif  // PBSEP_BSS_EVAL_HPP_
