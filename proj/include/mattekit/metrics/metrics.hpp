#ifndef MATTEKIT_METRICS_METRICS_HPP_
#define MATTEKIT_METRICS_METRICS_HPP_

#include <vector>

#include "mattekit/core/image.hpp"

namespace mattekit::metrics {

/// Scaling and kernel conventions for the four matting error metrics. The
/// printed numbers in the evaluation lineage are scaled; the factors are part
/// of the toolkit's contract and configurable.
struct MetricOptions {
  double sad_scale = 1e-3;   // SAD = scale · Σ|pred−gt|
  double mse_scale = 1e3;    // MSE = scale · mean (pred−gt)²
  double grad_scale = 1e-1;  // Grad = scale · Σ (‖∇pred‖−‖∇gt‖)²
  double conn_scale = 1e-3;  // Conn = scale · Σ |φ(pred)−φ(gt)|

  double grad_sigma = 1.4;        // Gaussian-derivative σ; kernel radius = ⌈4σ⌉
  double conn_step = 0.1;         // threshold grid spacing
  double conn_threshold = 0.15;   // d is charged only when d ≥ this
};

/// region == nullptr means whole image. With an all-ones region both modes
/// agree exactly.
double sad(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask* region = nullptr,
           const MetricOptions& options = {});

double mse(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask* region = nullptr,
           const MetricOptions& options = {});

/// Gradient error: image gradients from first-order Gaussian derivative
/// filters (σ from options, radius ⌈4σ⌉, reflected borders), magnitude per
/// pixel, squared magnitude differences summed over the region. Requires
/// min(H,W) ≥ kernel size.
double grad_error(const AlphaMatte& pred, const AlphaMatte& gt,
                  const BinaryMask* region = nullptr, const MetricOptions& options = {});

/// Connectivity error. Ω is the largest 4-connected component of pixels where
/// both mattes equal 1 (ties broken by smallest row-major pixel index). For
/// each matte, l(p) is the highest threshold θ ∈ {step, 2·step, …, 1} at which
/// p belongs to the θ-superlevel set and is 4-connected to Ω within it, else 0;
/// d = value − l and φ = 1 − d·1[d ≥ conn_threshold]. When Ω is empty the
/// metric is 0 with a NoFullyOpaqueRegion warning.
double conn_error(const AlphaMatte& pred, const AlphaMatte& gt,
                  const BinaryMask* region = nullptr, const MetricOptions& options = {},
                  std::vector<Warning>* warnings = nullptr);

namespace detail {
/// ‖∇m‖ per pixel, double precision, separable convolution.
std::vector<double> gaussian_gradient_magnitude(const AlphaMatte& m, double sigma);

/// Per-pixel connectivity map l for one matte against a fixed source region.
std::vector<double> connectivity_levels(const AlphaMatte& m,
                                        const std::vector<uint8_t>& omega, int h, int w,
                                        double step);

/// Largest 4-connected component of {pred==1 && gt==1}; empty when none.
std::vector<uint8_t> largest_joint_opaque_component(const AlphaMatte& pred,
                                                    const AlphaMatte& gt);
}  // namespace detail

}  // namespace mattekit::metrics

#endif  // MATTEKIT_METRICS_METRICS_HPP_
