#include "mattekit/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "mattekit/losses/pyramid.hpp"  // reflect_index

namespace mattekit::metrics {

namespace {

void check_pair(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask* region,
                const char* where) {
  require_same_shape(pred.height(), pred.width(), gt.height(), gt.width(), where);
  if (region) {
    require_same_shape(pred.height(), pred.width(), region->height(), region->width(), where);
  }
}

bool in_region(const BinaryMask* region, size_t p) {
  return region == nullptr || region->values()[p] != 0;
}

// Normalized Gaussian taps and the sampled derivative of that Gaussian,
// radius ⌈4σ⌉.
void gaussian_kernels(double sigma, std::vector<double>& smooth, std::vector<double>& deriv) {
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  smooth.resize(2 * radius + 1);
  deriv.resize(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double g = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    smooth[i + radius] = g;
    sum += g;
  }
  for (double& v : smooth) v /= sum;
  for (int i = -radius; i <= radius; ++i) {
    deriv[i + radius] = -(static_cast<double>(i) / (sigma * sigma)) * smooth[i + radius];
  }
}

// Correlate rows (axis = x) or columns (axis = y) with a 1-D kernel,
// reflected borders.
std::vector<double> correlate_axis(const std::vector<double>& in, int h, int w,
                                   const std::vector<double>& kernel, bool along_x) {
  const int radius = static_cast<int>(kernel.size() / 2);
  std::vector<double> out(in.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int yy = along_x ? y : losses::reflect_index(y + k, h);
        const int xx = along_x ? losses::reflect_index(x + k, w) : x;
        acc += kernel[k + radius] * in[static_cast<size_t>(yy) * w + xx];
      }
      out[static_cast<size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

}  // namespace

double sad(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask* region,
           const MetricOptions& options) {
  check_pair(pred, gt, region, "sad");
  const std::span<const float> a = pred.values();
  const std::span<const float> b = gt.values();
  double sum = 0.0;
  for (size_t p = 0; p < a.size(); ++p) {
    if (in_region(region, p)) sum += std::abs(static_cast<double>(a[p]) - b[p]);
  }
  return options.sad_scale * sum;
}

double mse(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask* region,
           const MetricOptions& options) {
  check_pair(pred, gt, region, "mse");
  const std::span<const float> a = pred.values();
  const std::span<const float> b = gt.values();
  double sum = 0.0;
  size_t count = 0;
  for (size_t p = 0; p < a.size(); ++p) {
    if (in_region(region, p)) {
      const double d = static_cast<double>(a[p]) - b[p];
      sum += d * d;
      ++count;
    }
  }
  if (count == 0) return 0.0;
  return options.mse_scale * (sum / static_cast<double>(count));
}

namespace detail {

std::vector<double> gaussian_gradient_magnitude(const AlphaMatte& m, double sigma) {
  std::vector<double> smooth;
  std::vector<double> deriv;
  gaussian_kernels(sigma, smooth, deriv);

  const int h = m.height();
  const int w = m.width();
  const int ksize = static_cast<int>(smooth.size());
  if (std::min(h, w) < ksize) {
    throw Error(ErrorCode::ImageTooSmall,
                "grad_error: image " + std::to_string(h) + "x" + std::to_string(w) +
                    " smaller than the " + std::to_string(ksize) + "-tap derivative filter");
  }

  std::vector<double> plane(m.values().size());
  const std::span<const float> v = m.values();
  for (size_t p = 0; p < plane.size(); ++p) plane[p] = v[p];

  const std::vector<double> dx = correlate_axis(
      correlate_axis(plane, h, w, deriv, /*along_x=*/true), h, w, smooth, /*along_x=*/false);
  const std::vector<double> dy = correlate_axis(
      correlate_axis(plane, h, w, smooth, /*along_x=*/true), h, w, deriv, /*along_x=*/false);

  std::vector<double> mag(plane.size());
  for (size_t p = 0; p < plane.size(); ++p) {
    mag[p] = std::sqrt(dx[p] * dx[p] + dy[p] * dy[p]);
  }
  return mag;
}

std::vector<uint8_t> largest_joint_opaque_component(const AlphaMatte& pred,
                                                    const AlphaMatte& gt) {
  const int h = pred.height();
  const int w = pred.width();
  const std::span<const float> a = pred.values();
  const std::span<const float> b = gt.values();
  const size_t pixels = a.size();

  std::vector<uint8_t> joint(pixels);
  for (size_t p = 0; p < pixels; ++p) joint[p] = (a[p] == 1.0f && b[p] == 1.0f) ? 1 : 0;

  std::vector<int> label(pixels, -1);
  std::vector<uint8_t> best(pixels, 0);
  size_t best_size = 0;
  std::vector<size_t> component;
  std::queue<size_t> frontier;

  for (size_t start = 0; start < pixels; ++start) {
    if (!joint[start] || label[start] != -1) continue;
    component.clear();
    label[start] = static_cast<int>(start);
    frontier.push(start);
    while (!frontier.empty()) {
      const size_t p = frontier.front();
      frontier.pop();
      component.push_back(p);
      const int y = static_cast<int>(p) / w;
      const int x = static_cast<int>(p) % w;
      const int ny[4] = {y - 1, y + 1, y, y};
      const int nx[4] = {x, x, x - 1, x + 1};
      for (int k = 0; k < 4; ++k) {
        if (ny[k] < 0 || ny[k] >= h || nx[k] < 0 || nx[k] >= w) continue;
        const size_t q = static_cast<size_t>(ny[k]) * w + nx[k];
        if (joint[q] && label[q] == -1) {
          label[q] = static_cast<int>(start);
          frontier.push(q);
        }
      }
    }
    // Strictly larger wins; an equal-sized later component keeps the earlier
    // one, i.e. the smallest starting row-major index.
    if (component.size() > best_size) {
      best_size = component.size();
      std::fill(best.begin(), best.end(), 0);
      for (const size_t p : component) best[p] = 1;
    }
  }
  return best;
}

std::vector<double> connectivity_levels(const AlphaMatte& m,
                                        const std::vector<uint8_t>& omega, int h, int w,
                                        double step) {
  const std::span<const float> v = m.values();
  const size_t pixels = v.size();
  std::vector<double> level(pixels, 0.0);
  if (omega.size() != pixels) {
    throw Error(ErrorCode::ShapeMismatch, "connectivity_levels: omega/matte size mismatch");
  }

  const int steps = static_cast<int>(std::llround(1.0 / step));
  std::vector<uint8_t> visited(pixels);
  std::queue<size_t> frontier;

  // Highest threshold first: the first BFS that reaches a pixel fixes its
  // connectivity level.
  std::vector<uint8_t> assigned(pixels, 0);
  for (int s = steps; s >= 1; --s) {
    const double theta = s * step;
    std::fill(visited.begin(), visited.end(), 0);
    for (size_t p = 0; p < pixels; ++p) {
      if (omega[p] && !visited[p]) {
        visited[p] = 1;
        frontier.push(p);
      }
    }
    while (!frontier.empty()) {
      const size_t p = frontier.front();
      frontier.pop();
      if (!assigned[p] && static_cast<double>(v[p]) >= theta) {
        assigned[p] = 1;
        level[p] = theta;
      }
      const int y = static_cast<int>(p) / w;
      const int x = static_cast<int>(p) % w;
      const int ny[4] = {y - 1, y + 1, y, y};
      const int nx[4] = {x, x, x - 1, x + 1};
      for (int k = 0; k < 4; ++k) {
        if (ny[k] < 0 || ny[k] >= h || nx[k] < 0 || nx[k] >= w) continue;
        const size_t q = static_cast<size_t>(ny[k]) * w + nx[k];
        if (!visited[q] && static_cast<double>(v[q]) >= theta) {
          visited[q] = 1;
          frontier.push(q);
        }
      }
    }
  }
  return level;
}

}  // namespace detail

double grad_error(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask* region,
                  const MetricOptions& options) {
  check_pair(pred, gt, region, "grad_error");
  const std::vector<double> mp = detail::gaussian_gradient_magnitude(pred, options.grad_sigma);
  const std::vector<double> mg = detail::gaussian_gradient_magnitude(gt, options.grad_sigma);
  double sum = 0.0;
  for (size_t p = 0; p < mp.size(); ++p) {
    if (in_region(region, p)) {
      const double d = mp[p] - mg[p];
      sum += d * d;
    }
  }
  return options.grad_scale * sum;
}

double conn_error(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask* region,
                  const MetricOptions& options, std::vector<Warning>* warnings) {
  check_pair(pred, gt, region, "conn_error");

  const std::vector<uint8_t> omega = detail::largest_joint_opaque_component(pred, gt);
  const bool have_omega = std::any_of(omega.begin(), omega.end(), [](uint8_t b) { return b; });
  if (!have_omega) {
    if (warnings) warnings->push_back(Warning::NoFullyOpaqueRegion);
    return 0.0;
  }

  const int h = pred.height();
  const int w = pred.width();
  const std::vector<double> lp =
      detail::connectivity_levels(pred, omega, h, w, options.conn_step);
  const std::vector<double> lg = detail::connectivity_levels(gt, omega, h, w, options.conn_step);

  const std::span<const float> vp = pred.values();
  const std::span<const float> vg = gt.values();
  double sum = 0.0;
  for (size_t p = 0; p < lp.size(); ++p) {
    if (!in_region(region, p)) continue;
    const double dp = static_cast<double>(vp[p]) - lp[p];
    const double dg = static_cast<double>(vg[p]) - lg[p];
    const double phi_p = 1.0 - (dp >= options.conn_threshold ? dp : 0.0);
    const double phi_g = 1.0 - (dg >= options.conn_threshold ? dg : 0.0);
    sum += std::abs(phi_p - phi_g);
  }
  return options.conn_scale * sum;
}

}  // namespace mattekit::metrics
