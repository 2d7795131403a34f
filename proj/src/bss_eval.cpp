// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "pbsep/bss_eval.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pbsep {

namespace {

constexpr double kSingularCutoff = 1e-10;  // relative to the largest
constexpr double kNegligibleEnergy = 1e-30;

Eigen::VectorXd clip_to_vector(const AudioClip& clip) {
  return Eigen::Map<const Eigen::VectorXd>(clip.samples.data(),
                                           static_cast<long>(clip.samples.size()));
}

// Solves G c = v through the cached eigendecomposition, dropping directions
// whose singular value is below cutoff * sigma_max.
Eigen::VectorXd pinv_solve(
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& eig,
    const Eigen::VectorXd& v) {
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lambda_max = lambda.cwiseMax(0.0).maxCoeff();
  const double floor = lambda_max * kSingularCutoff * kSingularCutoff;
  Eigen::VectorXd w = eig.eigenvectors().transpose() * v;
  for (long i = 0; i < w.size(); ++i) {
    w(i) = (lambda(i) > floor && lambda(i) > 0.0) ? w(i) / lambda(i) : 0.0;
  }
  return eig.eigenvectors() * w;
}

double ratio_db(double signal, double error) {
  if (error <= signal * kNegligibleEnergy) {
    return std::numeric_limits<double>::infinity();
  }
  if (signal <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / error);
}

double mean_db(double a, double b) { return 0.5 * (a + b); }

}  // namespace

DelayProjector::DelayProjector(const std::vector<Eigen::VectorXd>& references,
                               int filter_len) {
  if (references.empty()) {
    throw std::invalid_argument("DelayProjector: no references");
  }
  if (filter_len < 1) {
    throw std::invalid_argument("DelayProjector: filter_len must be >= 1");
  }
  const long n = references.front().size();
  if (n < filter_len) {
    throw std::invalid_argument("DelayProjector: references shorter than filter");
  }
  for (const Eigen::VectorXd& r : references) {
    if (r.size() != n) {
      throw std::invalid_argument("DelayProjector: reference length mismatch");
    }
    if (r.squaredNorm() == 0.0) {
      throw std::invalid_argument("DelayProjector: all-zero reference");
    }
  }

  filter_len_ = filter_len;
  source_count_ = static_cast<int>(references.size());
  const long cols = static_cast<long>(source_count_) * filter_len;
  embedded_.setZero(n, cols);
  for (int j = 0; j < source_count_; ++j) {
    for (int d = 0; d < filter_len; ++d) {
      embedded_.col(static_cast<long>(j) * filter_len + d)
          .tail(n - d) = references[j].head(n - d);
    }
  }

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(cols, cols);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(embedded_.transpose());
  gram.triangularView<Eigen::Upper>() = gram.transpose();

  full_gram_.compute(gram);
  target_gram_.reserve(source_count_);
  for (int j = 0; j < source_count_; ++j) {
    target_gram_.emplace_back(gram.block(static_cast<long>(j) * filter_len,
                                         static_cast<long>(j) * filter_len,
                                         filter_len, filter_len));
  }
}

Eigen::VectorXd DelayProjector::project(const Eigen::VectorXd& estimate,
                                        long col_begin, long col_count) const {
  const Eigen::VectorXd v =
      embedded_.middleCols(col_begin, col_count).transpose() * estimate;
  const Eigen::VectorXd coeffs =
      (col_count == embedded_.cols())
          ? pinv_solve(full_gram_, v)
          : pinv_solve(target_gram_[col_begin / filter_len_], v);
  return embedded_.middleCols(col_begin, col_count) * coeffs;
}

Decomposition DelayProjector::decompose(const Eigen::VectorXd& estimate,
                                        int target_index) const {
  if (estimate.size() != embedded_.rows()) {
    throw std::invalid_argument("decompose: estimate length mismatch");
  }
  if (target_index < 0 || target_index >= source_count_) {
    throw std::invalid_argument("decompose: bad target index");
  }
  Decomposition d;
  d.s_target =
      project(estimate, static_cast<long>(target_index) * filter_len_,
              filter_len_);
  const Eigen::VectorXd p_full = project(estimate, 0, embedded_.cols());
  d.e_interf = p_full - d.s_target;
  d.e_artif = estimate - p_full;
  return d;
}

Decomposition decompose(const AudioClip& estimate,
                        const std::vector<AudioClip>& references,
                        int target_index, int filter_len) {
  std::vector<Eigen::VectorXd> refs;
  refs.reserve(references.size());
  for (const AudioClip& r : references) {
    if (r.sample_rate != estimate.sample_rate ||
        r.samples.size() != estimate.samples.size()) {
      throw std::invalid_argument("decompose: rate or length mismatch");
    }
    refs.push_back(clip_to_vector(r));
  }
  DelayProjector projector(refs, filter_len);
  return projector.decompose(clip_to_vector(estimate), target_index);
}

SeparationMetrics metrics_from_decomposition(const Eigen::VectorXd& s_target,
                                             const Eigen::VectorXd& e_interf,
                                             const Eigen::VectorXd& e_artif) {
  const double es = s_target.squaredNorm();
  const double ei = e_interf.squaredNorm();
  const double ea = e_artif.squaredNorm();
  const double total = es + ei + ea;

  SeparationMetrics m;
  if (es <= total * kNegligibleEnergy) {
    // Estimate contains no target component.
    m.sdr_db = -std::numeric_limits<double>::infinity();
    m.sir_db = -std::numeric_limits<double>::infinity();
  } else {
    m.sdr_db = ratio_db(es, (e_interf + e_artif).squaredNorm());
    m.sir_db = ratio_db(es, ei);
  }
  m.sar_db = ratio_db((s_target + e_interf).squaredNorm(), ea);
  return m;
}

PairMetrics bss_eval_pair(const Eigen::VectorXd& estimate_a,
                          const Eigen::VectorXd& estimate_b,
                          const DelayProjector& projector) {
  if (projector.source_count() != 2) {
    throw std::invalid_argument("bss_eval_pair: projector needs 2 references");
  }
  const Decomposition da = projector.decompose(estimate_a, 0);
  const Decomposition db = projector.decompose(estimate_b, 1);
  PairMetrics out;
  out.source_a = metrics_from_decomposition(da.s_target, da.e_interf, da.e_artif);
  out.source_b = metrics_from_decomposition(db.s_target, db.e_interf, db.e_artif);
  out.mean.sdr_db = mean_db(out.source_a.sdr_db, out.source_b.sdr_db);
  out.mean.sir_db = mean_db(out.source_a.sir_db, out.source_b.sir_db);
  out.mean.sar_db = mean_db(out.source_a.sar_db, out.source_b.sar_db);
  return out;
}

PairMetrics bss_eval_pair(const AudioClip& estimate_a,
                          const AudioClip& estimate_b,
                          const AudioClip& reference_a,
                          const AudioClip& reference_b, int filter_len) {
  const std::size_t n = reference_a.samples.size();
  if (reference_b.samples.size() != n || estimate_a.samples.size() != n ||
      estimate_b.samples.size() != n) {
    throw std::invalid_argument("bss_eval_pair: length mismatch");
  }
  if (estimate_a.sample_rate != reference_a.sample_rate ||
      estimate_b.sample_rate != reference_a.sample_rate ||
      reference_b.sample_rate != reference_a.sample_rate) {
    throw std::invalid_argument("bss_eval_pair: sample rate mismatch");
  }
  DelayProjector projector(
      {clip_to_vector(reference_a), clip_to_vector(reference_b)}, filter_len);
  return bss_eval_pair(clip_to_vector(estimate_a), clip_to_vector(estimate_b),
                       projector);
}

}  // namespace pbsep
