#ifndef MATTEKIT_COMPOSE_COMPOSITOR_HPP_
#define MATTEKIT_COMPOSE_COMPOSITOR_HPP_

#include "mattekit/core/image.hpp"

namespace mattekit::compose {

/// C(x,y,c) = α(x,y)·F(x,y,c) + (1−α(x,y))·B(x,y,c), evaluated in double per
/// pixel. fg and bg must share the channel count; all three share H×W.
ImageBuffer composite(const ImageBuffer& fg, const ImageBuffer& bg, const AlphaMatte& alpha);

/// Coarse-label rule: 1 wherever alpha > 0, else 0.
BinaryMask binarize_alpha(const AlphaMatte& alpha);

/// Three-region map as a 1-channel image with values {0, 0.5, 1}:
/// 1 where erode(alpha==1, radius), 0 where dilate(alpha>0, radius) is 0,
/// 0.5 elsewhere. Erosion and dilation use a square structuring element of
/// side 2·radius+1; pixels outside the image count as background.
ImageBuffer make_trimap(const AlphaMatte& alpha, int radius);

namespace detail {
// Separable square-window morphology on {0,1} byte fields.
std::vector<uint8_t> erode_square(const std::vector<uint8_t>& in, int h, int w, int radius);
std::vector<uint8_t> dilate_square(const std::vector<uint8_t>& in, int h, int w, int radius);
}  // namespace detail

}  // namespace mattekit::compose

#endif  // MATTEKIT_COMPOSE_COMPOSITOR_HPP_
