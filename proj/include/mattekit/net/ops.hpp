#ifndef MATTEKIT_NET_OPS_HPP_
#define MATTEKIT_NET_OPS_HPP_

#include <utility>
#include <vector>

#include "mattekit/core/tensor.hpp"

namespace mattekit::net {

/// Convolution parameters: values laid out [out][in][kh][kw], one bias per
/// output channel.
struct ConvWeights {
  int out_channels = 0;
  int in_channels = 0;
  int kernel_h = 0;
  int kernel_w = 0;
  std::vector<float> values;
  std::vector<float> bias;

  static ConvWeights zeros(int out_ch, int in_ch, int kh, int kw);

  float at(int o, int i, int ky, int kx) const {
    return values[((static_cast<size_t>(o) * in_channels + i) * kernel_h + ky) * kernel_w + kx];
  }

  void validate() const;  // throws on count mismatches
};

/// Cross-correlation with zero padding preserving H×W ("same" for odd
/// kernels). Input is C×H×W; accumulation in double.
Tensor conv2d(const Tensor& input, const ConvWeights& weights);

Tensor relu(const Tensor& input);

/// Splits C×H×W into two equal channel halves (first, second). Errors with
/// OddSplit on odd channel counts.
std::pair<Tensor, Tensor> channel_split(const Tensor& input);

Tensor elementwise_mul(const Tensor& a, const Tensor& b);
Tensor elementwise_add(const Tensor& a, const Tensor& b);

/// Per-channel spatial mean of a C×H×W tensor.
std::vector<double> global_avg_pool(const Tensor& input);

/// Bilinear resize of every channel plane (half-pixel centers).
Tensor upsample_bilinear(const Tensor& input, int out_h, int out_w);

}  // namespace mattekit::net

#endif  // MATTEKIT_NET_OPS_HPP_
