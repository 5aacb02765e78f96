#ifndef MATTEKIT_LOSSES_LOSSES_HPP_
#define MATTEKIT_LOSSES_LOSSES_HPP_

#include <array>
#include <vector>

#include "mattekit/core/image.hpp"

namespace mattekit::losses {

/// Binary cross-entropy over all pixels, predictions clamped to
/// [1e-7, 1−1e-7] before the logs. Sequential row-major summation.
double bce(const AlphaMatte& pred, const BinaryMask& target);

/// dom + 0.8·aux[0] + 0.6·aux[1] + 0.4·aux[2].
double coarse_loss(double dom, const std::array<double, 3>& aux);

inline constexpr std::array<double, 3> kCoarseAuxWeights = {0.8, 0.6, 0.4};

/// Mean |pred − gt| over the unknown pixels {g=1}. 0 with an EmptyUnknown
/// warning when g has none.
double l1_loss(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask& g,
               std::vector<Warning>* warnings = nullptr);

/// Mean |composite(fg,bg,pred) − composite(fg,bg,gt)| over unknown pixels and
/// channels.
double composition_loss(const AlphaMatte& pred, const AlphaMatte& gt, const ImageBuffer& fg,
                        const ImageBuffer& bg, const BinaryMask& g,
                        std::vector<Warning>* warnings = nullptr);

/// Σ_{k<levels} 2^k · mean|Lap_k(pred⊙g) − Lap_k(gt⊙g)|, five levels by
/// default, 5×5 binomial kernel. Each level's L1 is averaged over that level's
/// pixel count. Requires min(H,W) ≥ 2^(levels−2) so at most the top two
/// gaussian levels are single pixels.
double laplacian_loss(const AlphaMatte& pred, const AlphaMatte& gt, const BinaryMask& g,
                      int levels = 5);

/// l1_loss + composition_loss + laplacian_loss on the unknown-restricted
/// mattes. Exactly the sum of the three components.
double refine_loss(const AlphaMatte& pred, const AlphaMatte& gt, const ImageBuffer& fg,
                   const ImageBuffer& bg, const BinaryMask& g,
                   std::vector<Warning>* warnings = nullptr);

}  // namespace mattekit::losses

#endif  // MATTEKIT_LOSSES_LOSSES_HPP_
