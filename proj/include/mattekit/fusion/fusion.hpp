#ifndef MATTEKIT_FUSION_FUSION_HPP_
#define MATTEKIT_FUSION_FUSION_HPP_

#include "mattekit/core/image.hpp"

namespace mattekit::fusion {

struct FusionOptions {
  // Edge-mask thresholds. Strict bounds: g = 1 iff lo < value < hi. The
  // defaults take the inequalities literally; (1/255, 254/255) treats 8-bit
  // near-extremes as definite when predictions come from quantized files.
  double quant_lo = 0.0;
  double quant_hi = 1.0;
  // When false, fuse() requires matching shapes instead of resampling the
  // low-resolution matte.
  bool allow_resize = true;
};

/// Edge (unknown) mask: g(x,y) = 1 iff lo < α_h(x,y) < hi, else 0.
BinaryMask f_quant(const AlphaMatte& alpha_h, const FusionOptions& options = {});

/// Coarse-to-fine blend: α̂ = g ⊙ α_h + (1−g) ⊙ upsample(α_l) with
/// g = f_quant(α_h) and bilinear upsampling to α_h's size. Each output pixel
/// is either α_h or upsample(α_l) verbatim.
AlphaMatte fuse(const AlphaMatte& alpha_h, const AlphaMatte& alpha_l,
                const FusionOptions& options = {});

/// Elementwise α ⊙ g: zero outside the unknown region.
AlphaMatte unknown_restrict(const AlphaMatte& alpha, const BinaryMask& g);

}  // namespace mattekit::fusion

#endif  // MATTEKIT_FUSION_FUSION_HPP_
