#include "wdn/svm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <string>

#include "wdn/errors.hpp"

namespace wdn {

namespace {

constexpr double kVarianceFloor = 1e-12;

double resolve_gamma(std::span<const SvmSample> samples) {
  double mean = 0.0;
  for (const auto& s : samples) mean += s.transfer;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (const auto& s : samples) var += (s.transfer - mean) * (s.transfer - mean);
  var /= static_cast<double>(samples.size());
  return 1.0 / (2.0 * var + kVarianceFloor);
}

}  // namespace

std::string_view to_string(KernelKind k) noexcept {
  switch (k) {
    case KernelKind::Linear: return "linear";
    case KernelKind::Polynomial: return "polynomial";
    case KernelKind::Rbf: return "rbf";
  }
  return "unknown";
}

void KernelSpec::validate(bool require_gamma) const {
  if (kind == KernelKind::Polynomial && degree < 1) {
    throw ParameterError("polynomial kernel degree must be >= 1");
  }
  if (kind == KernelKind::Polynomial && !std::isfinite(coef0)) {
    throw ParameterError("polynomial kernel coef0 must be finite");
  }
  if (kind == KernelKind::Rbf) {
    if (gamma && !(*gamma > 0.0 && std::isfinite(*gamma))) {
      throw ParameterError("rbf gamma must be positive");
    }
    if (require_gamma && !gamma) throw ParameterError("rbf gamma is unset");
  }
}

double kernel_eval(const KernelSpec& spec, double u, double v) {
  spec.validate(true);
  switch (spec.kind) {
    case KernelKind::Linear: return u * v;
    case KernelKind::Polynomial: return std::pow(u * v + spec.coef0, spec.degree);
    case KernelKind::Rbf: return std::exp(-*spec.gamma * (u - v) * (u - v));
  }
  return 0.0;
}

double SvmModel::raw_predict(double transfer) const {
  double y = intercept;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    y += coefficients[i] * labels[i] * kernel_eval(kernel, transfer, centers[i]);
  }
  return y;
}

SvmPrediction SvmModel::predict(double transfer) const {
  const double raw = raw_predict(transfer);
  const double v = range.clamp(raw);
  return {v, v != raw};
}

SvmModel fit_svm(std::span<const SvmSample> samples, KernelSpec kernel, double lambda,
                 WeightRange range) {
  if (samples.empty()) throw InputError("SVM fit needs at least one training point");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("regularization lambda must be positive");
  }
  for (const auto& s : samples) {
    if (!std::isfinite(s.transfer) || !std::isfinite(s.label)) {
      throw InputError("non-finite SVM training point");
    }
  }
  kernel.validate();
  if (kernel.kind == KernelKind::Rbf && !kernel.gamma) kernel.gamma = resolve_gamma(samples);

  // Merge points by transfer value; std::map keeps centers sorted.
  std::map<double, std::pair<double, std::size_t>> merged;
  for (const auto& s : samples) {
    auto& [mean, n] = merged[s.transfer];
    ++n;
    mean += (s.label - mean) / static_cast<double>(n);
  }

  SvmModel model;
  model.kernel = kernel;
  model.lambda = lambda;
  model.range = range;
  model.merged_points = samples.size() - merged.size();
  for (const auto& [u, entry] : merged) {
    model.centers.push_back(u);
    model.labels.push_back(entry.first);
    model.multiplicity.push_back(entry.second);
  }

  // Augmented least squares: rows sqrt(n_j)·[1, φ(u_j)] against sqrt(n_j)·y_j,
  // stacked over sqrt(λ)·[0, I] against 0.
  const auto m = static_cast<Eigen::Index>(model.centers.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * m, m + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double sw = std::sqrt(static_cast<double>(model.multiplicity[j]));
    a(j, 0) = sw;
    for (Eigen::Index i = 0; i < m; ++i) {
      a(j, i + 1) = sw * model.labels[i] * kernel_eval(kernel, model.centers[j], model.centers[i]);
    }
    b(j) = sw * model.labels[j];
    a(m + j, j + 1) = std::sqrt(lambda);
  }
  const Eigen::VectorXd omega = a.colPivHouseholderQr().solve(b);
  if (!omega.allFinite()) throw NumericError("SVM ridge solve produced non-finite coefficients");

  model.intercept = omega(0);
  model.coefficients.assign(omega.data() + 1, omega.data() + 1 + m);

  double abs_err = 0.0;
  for (const auto& s : samples) abs_err += std::abs(model.raw_predict(s.transfer) - s.label);
  model.training_mae = abs_err / static_cast<double>(samples.size());
  if (!std::isfinite(model.training_mae)) throw NumericError("SVM training error is not finite");
  return model;
}

SvmPredictor::SvmPredictor(ProfileTable table, const PartialWeighting& w, SvmConfig config)
    : table_(std::move(table)) {
  if (table_.kind() != w.variant() || table_.size() != w.universe_size()) {
    throw DomainError("profile table does not match the training weighting");
  }
  std::vector<SvmSample> samples;
  samples.reserve(w.size());
  for (std::size_t e : w.domain()) samples.push_back({transfer(e), w.weight_unchecked(e)});
  model_ = fit_svm(samples, config.kernel, config.lambda, w.range());
}

std::vector<SvmPrediction> SvmPredictor::predict_batch(std::span<const std::size_t> elements) const {
  for (std::size_t e : elements) table_.at(e);
  std::vector<SvmPrediction> out(elements.size());
  const auto n = static_cast<std::ptrdiff_t>(elements.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = predict(elements[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<SvmPrediction> SvmPredictor::predict_batch_serial(
    std::span<const std::size_t> elements) const {
  std::vector<SvmPrediction> out;
  out.reserve(elements.size());
  for (std::size_t e : elements) out.push_back(predict(e));
  return out;
}

}  // namespace wdn
