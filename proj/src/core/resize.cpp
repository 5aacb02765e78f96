#include "mattekit/core/resize.hpp"

namespace mattekit {

namespace {

void check_out_dims(int out_h, int out_w) {
  if (out_h < 1 || out_w < 1) {
    throw Error(ErrorCode::ZeroDimension, "resize target " + std::to_string(out_h) + "x" +
                                              std::to_string(out_w));
  }
}

}  // namespace

ImageBuffer resize_bilinear(const ImageBuffer& image, int out_h, int out_w) {
  check_out_dims(out_h, out_w);
  std::vector<float> out(static_cast<size_t>(out_h) * out_w * image.channels());
  for (int c = 0; c < image.channels(); ++c) {
    detail::resize_plane_bilinear(image.plane(c).data(), image.height(), image.width(),
                                  out.data() + static_cast<size_t>(c) * out_h * out_w, out_h,
                                  out_w);
  }
  return ImageBuffer(out_h, out_w, image.channels(), std::move(out));
}

AlphaMatte resize_bilinear(const AlphaMatte& matte, int out_h, int out_w) {
  check_out_dims(out_h, out_w);
  std::vector<float> out(static_cast<size_t>(out_h) * out_w);
  detail::resize_plane_bilinear(matte.values().data(), matte.height(), matte.width(), out.data(),
                                out_h, out_w);
  return AlphaMatte(out_h, out_w, std::move(out));
}

}  // namespace mattekit
