#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "momlab/noise.hpp"
#include "momlab/rng.hpp"

namespace momlab {

// Finite-arm linear bandit with a hidden unit parameter.
//
// Arms are stored as the columns of a d x K matrix. `gaps` caches
// theta*^T x* - theta*^T x_a for the current arm set and must be refreshed
// (refresh()) whenever the arms change.
template <typename Scalar = double>
struct BanditInstance {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Vector theta_star;
  Matrix arms;
  NoiseModel noise = NoiseModel::gaussian(1.0);
  Vector means;
  Vector gaps;
  Eigen::Index optimal_arm = 0;
  Scalar optimal_value = 0;

  [[nodiscard]] Eigen::Index dimension() const { return theta_star.size(); }
  [[nodiscard]] Eigen::Index arm_count() const { return arms.cols(); }

  void refresh() {
    if (arms.rows() != theta_star.size()) {
      throw std::invalid_argument("bandit instance: arm dimension does not match theta*");
    }
    if (arms.cols() == 0) throw std::invalid_argument("bandit instance: empty arm set");
    means = arms.transpose() * theta_star;
    optimal_value = means.maxCoeff(&optimal_arm);
    gaps = Vector::Constant(means.size(), optimal_value) - means;
  }
};

using BanditInstanceD = BanditInstance<double>;

namespace detail {

template <typename Scalar>
typename BanditInstance<Scalar>::Matrix draw_unit_arms(Eigen::Index d, Eigen::Index K,
                                                       RngStream& rng) {
  typename BanditInstance<Scalar>::Matrix arms(d, K);
  for (Eigen::Index a = 0; a < K; ++a) {
    for (Eigen::Index i = 0; i < d; ++i) arms(i, a) = static_cast<Scalar>(rng.uniform());
    Scalar norm = arms.col(a).norm();
    // A draw of exactly zero has probability 2^-53d; resample it.
    while (!(norm > 0)) {
      for (Eigen::Index i = 0; i < d; ++i) arms(i, a) = static_cast<Scalar>(rng.uniform());
      norm = arms.col(a).norm();
    }
    arms.col(a) /= norm;
  }
  return arms;
}

}  // namespace detail

// theta* = 1_d / sqrt(d); each arm has i.i.d. uniform[0,1] coordinates,
// normalised to unit length. Arms are drawn column by column from rng.
template <typename Scalar = double>
BanditInstance<Scalar> generate_instance(Eigen::Index d, Eigen::Index K, const NoiseModel& noise,
                                         RngStream& rng) {
  if (d < 1 || K < 1) throw std::invalid_argument("generate_instance: d and K must be >= 1");
  BanditInstance<Scalar> inst;
  inst.theta_star = BanditInstance<Scalar>::Vector::Constant(d, Scalar(1) / std::sqrt(Scalar(d)));
  inst.arms = detail::draw_unit_arms<Scalar>(d, K, rng);
  inst.noise = noise;
  inst.refresh();
  return inst;
}

// Replaces the arm set with a fresh draw of the same shape.
template <typename Scalar>
void redraw_arms(BanditInstance<Scalar>& inst, RngStream& rng) {
  inst.arms = detail::draw_unit_arms<Scalar>(inst.dimension(), inst.arm_count(), rng);
  inst.refresh();
}

// theta*^T x_a + eta, eta drawn from `noise`.
template <typename Scalar>
Scalar pull(const BanditInstance<Scalar>& inst, Eigen::Index arm, NoiseSampler& noise,
            RngStream& rng) {
  if (arm < 0 || arm >= inst.arm_count()) throw std::out_of_range("pull: arm index out of range");
  return inst.means(arm) + static_cast<Scalar>(noise(rng));
}

template <typename Scalar>
Scalar pull(const BanditInstance<Scalar>& inst, Eigen::Index arm, RngStream& rng) {
  NoiseSampler noise(inst.noise);
  return pull(inst, arm, noise, rng);
}

struct PullRecord {
  std::size_t t;  // 1-based physical pull index
  Eigen::Index arm;
  double instant_regret;
  double cumulative_regret;
};

// Pseudo-regret bookkeeping; uses noiseless means only.
class RegretTracker {
 public:
  [[nodiscard]] double cumulative_regret() const noexcept { return cumulative_; }
  [[nodiscard]] std::size_t pull_count() const noexcept { return log_.size(); }
  [[nodiscard]] const std::vector<PullRecord>& log() const noexcept { return log_; }

  void reserve(std::size_t n) { log_.reserve(n); }

  template <typename Scalar>
  const PullRecord& record(const BanditInstance<Scalar>& inst, Eigen::Index arm) {
    if (arm < 0 || arm >= inst.arm_count()) throw std::out_of_range("record: arm index out of range");
    const double gap = std::max(0.0, static_cast<double>(inst.gaps(arm)));
    cumulative_ += gap;
    log_.push_back({log_.size() + 1, arm, gap, cumulative_});
    return log_.back();
  }

 private:
  double cumulative_ = 0.0;
  std::vector<PullRecord> log_;
};

template <typename Scalar>
const PullRecord& record(RegretTracker& tracker, const BanditInstance<Scalar>& inst,
                         Eigen::Index arm) {
  return tracker.record(inst, arm);
}

// Plain-text snapshot. Layout:
//   momlab-instance 1
//   <d> <K>
//   <noise kind> <parameter>
//   theta* as one row of d values
//   K rows, one arm per row
// Values use max_digits10 so reading the file back is exact.
template <typename Scalar>
void write_instance(std::ostream& os, const BanditInstance<Scalar>& inst) {
  const auto old_precision = os.precision(std::numeric_limits<Scalar>::max_digits10);
  os << "momlab-instance 1\n" << inst.dimension() << ' ' << inst.arm_count() << '\n';
  if (inst.noise.kind() == NoiseKind::student_t) {
    os << "student_t " << inst.noise.df() << '\n';
  } else {
    os << "gaussian " << inst.noise.sigma() << '\n';
  }
  auto write_row = [&os](const auto& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? " " : "") << v(i);
    os << '\n';
  };
  write_row(inst.theta_star);
  for (Eigen::Index a = 0; a < inst.arm_count(); ++a) write_row(inst.arms.col(a));
  os.precision(old_precision);
}

template <typename Scalar = double>
BanditInstance<Scalar> read_instance(std::istream& is) {
  std::string magic;
  int version = 0;
  Eigen::Index d = 0, K = 0;
  std::string kind;
  double param = 0.0;
  if (!(is >> magic >> version) || magic != "momlab-instance" || version != 1) {
    throw std::runtime_error("read_instance: bad header");
  }
  if (!(is >> d >> K) || d < 1 || K < 1) throw std::runtime_error("read_instance: bad shape");
  if (!(is >> kind >> param)) throw std::runtime_error("read_instance: bad noise line");
  BanditInstance<Scalar> inst;
  if (kind == "student_t") {
    inst.noise = NoiseModel::student_t(param);
  } else if (kind == "gaussian") {
    inst.noise = NoiseModel::gaussian(param);
  } else {
    throw std::runtime_error("read_instance: unknown noise kind '" + kind + "'");
  }
  inst.theta_star.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!(is >> inst.theta_star(i))) throw std::runtime_error("read_instance: truncated theta*");
  }
  inst.arms.resize(d, K);
  for (Eigen::Index a = 0; a < K; ++a) {
    for (Eigen::Index i = 0; i < d; ++i) {
      if (!(is >> inst.arms(i, a))) throw std::runtime_error("read_instance: truncated arms");
    }
  }
  inst.refresh();
  return inst;
}

}  // namespace momlab
