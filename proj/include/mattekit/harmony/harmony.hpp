#ifndef MATTEKIT_HARMONY_HARMONY_HPP_
#define MATTEKIT_HARMONY_HARMONY_HPP_

#include <vector>

#include "mattekit/core/image.hpp"

namespace mattekit::harmony {

/// Per-channel statistics of a masked region.
struct RegionStats {
  std::vector<double> mean;  // one entry per channel
  std::vector<double> std;   // sqrt(masked variance + epsilon), >= 0
  int pixel_count = 0;
};

struct HarmonyOptions {
  double epsilon = 1e-5;
  // Applies the transfer exactly as written, scale = background mean and
  // shift = background std, instead of the role-consistent reading.
  bool literal_eq10 = false;
};

/// mean_c and std_c over the masked pixels only:
///   mean_c = (1/n) Σ_{M=1} img(·,c)
///   std_c  = sqrt((1/n) Σ_{M=1} (img(·,c) − mean_c)² + ε)
/// Errors with EmptyMask when the mask has no 1-pixels.
RegionStats masked_stats(const ImageBuffer& image, const BinaryMask& mask,
                         double epsilon = 1e-5);

/// Statistics transfer on the masked region, before clamping. For each masked
/// pixel: out = scale_c·(in − μ_c)/σ_c + shift_c with (μ,σ) from the mask and
/// (shift, scale) = (mean, std) of the complement region. Unmasked pixels copy
/// through bit-identically. Returns the raw planar data, which may exceed [0,1].
std::vector<float> harmonize_raw(const ImageBuffer& composite, const BinaryMask& fg_mask,
                                 const HarmonyOptions& options = {});

/// Same raw transfer applied to arbitrary planar data (pre-clamp chaining).
std::vector<float> harmonize_raw_planes(const std::vector<float>& planes, int height,
                                        int width, int channels, const BinaryMask& fg_mask,
                                        const HarmonyOptions& options = {});

/// harmonize_raw clamped to [0,1] and rewrapped as an ImageBuffer.
ImageBuffer harmonize(const ImageBuffer& composite, const BinaryMask& fg_mask,
                      const HarmonyOptions& options = {});

}  // namespace mattekit::harmony

#endif  // MATTEKIT_HARMONY_HARMONY_HPP_
