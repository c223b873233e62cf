#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wdn/metric.hpp"
#include "wdn/weighting.hpp"

namespace wdn {

enum class KernelKind { Linear, Polynomial, Rbf };

std::string_view to_string(KernelKind k) noexcept;

/// Kernel on the real line. An unset rbf gamma is resolved at fit time from
/// the spread of the training transfer values.
struct KernelSpec {
  KernelKind kind = KernelKind::Rbf;
  int degree = 2;
  std::optional<double> gamma;
  double coef0 = 1.0;

  static KernelSpec linear() { return {KernelKind::Linear, 1, std::nullopt, 0.0}; }
  static KernelSpec polynomial(int degree, double coef0) {
    return {KernelKind::Polynomial, degree, std::nullopt, coef0};
  }
  static KernelSpec rbf(std::optional<double> gamma = std::nullopt) {
    return {KernelKind::Rbf, 2, gamma, 0.0};
  }

  /// ParameterError for degree < 1 or a non-positive gamma. With
  /// `require_gamma`, an unset rbf gamma is an error too.
  void validate(bool require_gamma = false) const;
};

/// linear: u·v; polynomial: (u·v + coef0)^degree; rbf: exp(-gamma (u-v)²).
double kernel_eval(const KernelSpec& spec, double u, double v);

/// Element mapped onto the reals by its c_count, with its training label.
struct SvmSample {
  double transfer = 0.0;
  double label = 0.0;
};

struct SvmPrediction {
  double value = 0.0;
  bool clamped = false;
};

/**
 * Fitted kernel expansion
 *
 *   y(u) = ω0 + Σ_i ω_i · y_i · κ(u, u_i)
 *
 * over the distinct training transfer values u_i, with y_i the mean label of
 * the training points at u_i.
 */
struct SvmModel {
  std::vector<double> centers;
  std::vector<double> labels;
  std::vector<std::size_t> multiplicity;
  std::vector<double> coefficients;
  double intercept = 0.0;
  KernelSpec kernel;
  double lambda = 0.0;
  WeightRange range;
  /// Training points that shared a transfer value with an earlier one.
  std::size_t merged_points = 0;
  double training_mae = 0.0;

  double raw_predict(double transfer) const;
  /// raw_predict clamped to `range`.
  SvmPrediction predict(double transfer) const;
};

/**
 * Ridge fit of the kernel expansion. Points sharing a transfer value are
 * merged first; the loss Σ_j (y_j - y(u_j))² + λ‖ω‖² over the original points
 * then becomes a multiplicity-weighted loss over the merged ones. The
 * intercept is not penalized.
 *
 * InputError on an empty or non-finite sample, ParameterError for λ <= 0 or
 * an invalid kernel, NumericError if the solve is not finite.
 */
SvmModel fit_svm(std::span<const SvmSample> samples, KernelSpec kernel, double lambda,
                 WeightRange range);

struct SvmConfig {
  KernelSpec kernel = KernelSpec::rbf();
  double lambda = 1e-3;
};

/// Fits on every training element of `w` using transfer = c_count.
class SvmPredictor {
 public:
  SvmPredictor(ProfileTable table, const PartialWeighting& w, SvmConfig config);

  const SvmModel& model() const noexcept { return model_; }
  const ProfileTable& table() const noexcept { return table_; }

  double transfer(std::size_t element) const {
    return static_cast<double>(table_.c_count(element));
  }
  SvmPrediction predict(std::size_t element) const { return model_.predict(transfer(element)); }

  std::vector<SvmPrediction> predict_batch(std::span<const std::size_t> elements) const;
  std::vector<SvmPrediction> predict_batch_serial(std::span<const std::size_t> elements) const;

 private:
  ProfileTable table_;
  SvmModel model_;
};

}  // namespace wdn
