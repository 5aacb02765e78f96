#ifndef MATTEKIT_IO_PNG_IO_HPP_
#define MATTEKIT_IO_PNG_IO_HPP_

#include <string>

#include "mattekit/core/image.hpp"

namespace mattekit::io {

// PNG only, grayscale or RGB, 8 or 16 bit. 8-bit samples map to [0,1] by /255,
// 16-bit by /65535; palette images expand to RGB and an alpha channel, when
// present, is stripped. Writes quantize round-half-up and go through a
// temporary file plus rename, so no partially written file survives a failure.

/// Reads a PNG into a 1- or 3-channel ImageBuffer.
ImageBuffer read_image(const std::string& path);

/// Reads a single-channel PNG as an alpha matte. Errors on color input.
AlphaMatte read_matte(const std::string& path);

/// Reads a single-channel PNG whose samples must be exactly 0 or full-scale.
BinaryMask read_mask(const std::string& path);

void write_image(const ImageBuffer& image, const std::string& path, int bit_depth = 8);
void write_matte(const AlphaMatte& matte, const std::string& path, int bit_depth = 8);
void write_mask(const BinaryMask& mask, const std::string& path);

}  // namespace mattekit::io

#endif  // MATTEKIT_IO_PNG_IO_HPP_
