#include "mattekit/losses/losses.hpp"

#include <algorithm>
#include <cmath>

#include "mattekit/compose/compositor.hpp"
#include "mattekit/fusion/fusion.hpp"
#include "mattekit/losses/pyramid.hpp"

namespace mattekit::losses {

namespace {

constexpr double kProbClamp = 1e-7;

void warn(std::vector<Warning>* sink, Warning w) {
  if (sink) sink->push_back(w);
}

Plane matte_to_plane(const AlphaMatte& m) {
  Plane p{m.height(), m.width(), std::vector<double>(m.values().size())};
  const std::span<const float> v = m.values();
  for (size_t i = 0; i < v.size(); ++i) p.data[i] = v[i];
  return p;
}

}  // namespace

double bce(const AlphaMatte& pred, const BinaryMask& target) {
  require_same_shape(pred.height(), pred.width(), target.height(), target.width(),
                     "bce pred/target");
  const std::span<const float> p_hat = pred.values();
  const std::span<const uint8_t> p = target.values();

  double sum = 0.0;
  for (size_t i = 0; i < p_hat.size(); ++i) {
    const double q = std::clamp(static_cast<double>(p_hat[i]), kProbClamp, 1.0 - kProbClamp);
    sum += p[i] ? std::log(q) : std::log(1.0 - q);
  }
  return -sum / static_cast<double>(p_hat.size());
}

double coarse_loss(double dom, const std::array<double, 3>& aux) {
  return dom + kCoarseAuxWeights[0] * aux[0] + kCoarseAuxWeights[1] * aux[1] +
         kCoarseAuxWeights[2] * aux[2];
}

double l1_loss(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask& g,
               std::vector<Warning>* warnings) {
  require_same_shape(pred.height(), pred.width(), gt.height(), gt.width(), "l1_loss pred/gt");
  require_same_shape(pred.height(), pred.width(), g.height(), g.width(), "l1_loss pred/mask");

  const std::span<const float> a = pred.values();
  const std::span<const float> b = gt.values();
  const std::span<const uint8_t> m = g.values();

  size_t count = 0;
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (m[i]) {
      sum += std::abs(static_cast<double>(a[i]) - b[i]);
      ++count;
    }
  }
  if (count == 0) {
    warn(warnings, Warning::EmptyUnknown);
    return 0.0;
  }
  return sum / static_cast<double>(count);
}

double composition_loss(const AlphaMatte& pred, const AlphaMatte& gt, const ImageBuffer& fg,
                        const ImageBuffer& bg, const BinaryMask& g,
                        std::vector<Warning>* warnings) {
  require_same_shape(pred.height(), pred.width(), gt.height(), gt.width(),
                     "composition_loss pred/gt");
  require_same_shape(pred.height(), pred.width(), fg.height(), fg.width(),
                     "composition_loss pred/fg");
  require_same_shape(pred.height(), pred.width(), g.height(), g.width(),
                     "composition_loss pred/mask");

  const ImageBuffer comp_pred = compose::composite(fg, bg, pred);
  const ImageBuffer comp_gt = compose::composite(fg, bg, gt);

  const std::span<const uint8_t> m = g.values();
  const size_t pixels = m.size();
  const int channels = fg.channels();

  size_t count = 0;
  double sum = 0.0;
  for (size_t i = 0; i < pixels; ++i) {
    if (!m[i]) continue;
    ++count;
    for (int c = 0; c < channels; ++c) {
      const size_t off = static_cast<size_t>(c) * pixels + i;
      sum += std::abs(static_cast<double>(comp_pred.data()[off]) - comp_gt.data()[off]);
    }
  }
  if (count == 0) {
    warn(warnings, Warning::EmptyUnknown);
    return 0.0;
  }
  return sum / static_cast<double>(count * channels);
}

double laplacian_loss(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask& g,
                      int levels) {
  require_same_shape(pred.height(), pred.width(), gt.height(), gt.width(),
                     "laplacian_loss pred/gt");
  require_same_shape(pred.height(), pred.width(), g.height(), g.width(),
                     "laplacian_loss pred/mask");

  const AlphaMatte masked_pred = fusion::unknown_restrict(pred, g);
  const AlphaMatte masked_gt = fusion::unknown_restrict(gt, g);

  const std::vector<Plane> pyr_pred = laplacian_pyramid(matte_to_plane(masked_pred), levels);
  const std::vector<Plane> pyr_gt = laplacian_pyramid(matte_to_plane(masked_gt), levels);

  double total = 0.0;
  for (int k = 0; k < levels; ++k) {
    const Plane& a = pyr_pred[k];
    const Plane& b = pyr_gt[k];
    double level_sum = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) level_sum += std::abs(a.data[i] - b.data[i]);
    const double level_mean = level_sum / static_cast<double>(a.data.size());
    total += static_cast<double>(1 << k) * level_mean;
  }
  return total;
}

double refine_loss(const AlphaMatte& pred, const AlphaMatte& gt, const ImageBuffer& fg,
                   const ImageBuffer& bg, const BinaryMask& g,
                   std::vector<Warning>* warnings) {
  const double l1 = l1_loss(pred, gt, g, warnings);
  // The composition term would re-report the same empty-unknown condition; the
  // l1 call above already has.
  const double comp = composition_loss(pred, gt, fg, bg, g, nullptr);
  const double lap = laplacian_loss(pred, gt, g);
  return l1 + comp + lap;
}

}  // namespace mattekit::losses
