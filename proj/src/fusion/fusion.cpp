#include "mattekit/fusion/fusion.hpp"

#include "mattekit/core/resize.hpp"

namespace mattekit::fusion {

BinaryMask f_quant(const AlphaMatte& alpha_h, const FusionOptions& options) {
  const std::span<const float> a = alpha_h.values();
  std::vector<uint8_t> bits(a.size());
  for (size_t p = 0; p < a.size(); ++p) {
    bits[p] = (a[p] > options.quant_lo && a[p] < options.quant_hi) ? 1 : 0;
  }
  return BinaryMask(alpha_h.height(), alpha_h.width(), std::move(bits));
}

AlphaMatte fuse(const AlphaMatte& alpha_h, const AlphaMatte& alpha_l,
                const FusionOptions& options) {
  const int h = alpha_h.height();
  const int w = alpha_h.width();

  AlphaMatte low = alpha_l;
  if (alpha_l.height() != h || alpha_l.width() != w) {
    if (!options.allow_resize) {
      require_same_shape(h, w, alpha_l.height(), alpha_l.width(), "fuse alpha_h/alpha_l");
    }
    low = resize_bilinear(alpha_l, h, w);
  }

  const BinaryMask g = f_quant(alpha_h, options);
  const std::span<const uint8_t> edge = g.values();
  const std::span<const float> ah = alpha_h.values();
  const std::span<const float> al = low.values();

  std::vector<float> out(ah.size());
  for (size_t p = 0; p < ah.size(); ++p) out[p] = edge[p] ? ah[p] : al[p];
  return AlphaMatte(h, w, std::move(out));
}

AlphaMatte unknown_restrict(const AlphaMatte& alpha, const BinaryMask& g) {
  require_same_shape(alpha.height(), alpha.width(), g.height(), g.width(),
                     "unknown_restrict alpha/mask");
  const std::span<const float> a = alpha.values();
  const std::span<const uint8_t> m = g.values();
  std::vector<float> out(a.size());
  for (size_t p = 0; p < a.size(); ++p) out[p] = m[p] ? a[p] : 0.0f;
  return AlphaMatte(alpha.height(), alpha.width(), std::move(out));
}

}  // namespace mattekit::fusion
