#include "mattekit/net/blocks.hpp"

#include <cmath>

#include "mattekit/core/errors.hpp"

namespace mattekit::net {

Tensor head_attention(const Tensor& f_top, const ConvWeights& conv1,
                      const ConvWeights& conv2) {
  if (conv1.out_channels % 2 != 0) {
    throw Error(ErrorCode::OddSplit, "head_attention: conv1 output channels must be even, got " +
                                         std::to_string(conv1.out_channels));
  }
  if (conv1.out_channels != 2 * conv2.out_channels) {
    throw Error(ErrorCode::ChannelMismatch,
                "head_attention: conv1 must emit twice conv2's channels (" +
                    std::to_string(conv1.out_channels) + " vs " +
                    std::to_string(conv2.out_channels) + ")");
  }
  const Tensor wb = conv2d(f_top, conv1);
  auto [weight, bias] = channel_split(wb);
  const Tensor f_hat = relu(conv2d(f_top, conv2));
  return relu(elementwise_add(elementwise_mul(weight, f_hat), bias));
}

Tensor gcf(const Tensor& f, const GcfGate& gate) {
  if (f.rank() != 3) {
    throw Error(ErrorCode::ShapeMismatch, "gcf: expected a C×H×W tensor");
  }
  const int c = f.dim(0);
  if (gate.scale.size() != static_cast<size_t>(c) || gate.bias.size() != static_cast<size_t>(c)) {
    throw Error(ErrorCode::ChannelMismatch,
                "gcf: gate parameter count must match channel count " + std::to_string(c));
  }
  const std::vector<double> pooled = global_avg_pool(f);

  Tensor out = f;
  const size_t plane = static_cast<size_t>(f.dim(1)) * f.dim(2);
  for (int i = 0; i < c; ++i) {
    const double z = static_cast<double>(gate.scale[i]) * pooled[i] + gate.bias[i];
    const double weight = 1.0 / (1.0 + std::exp(-z));
    float* dst = out.mutable_data().data() + static_cast<size_t>(i) * plane;
    for (size_t p = 0; p < plane; ++p) {
      dst[p] = static_cast<float>(weight * dst[p]);
    }
  }
  return out;
}

Tensor ia_fuse_preactivation(const Tensor& f_l, const Tensor& f_h, const Tensor& f_g,
                             const IaParams& params) {
  if (f_l.rank() != 3 || f_h.rank() != 3 || f_g.rank() != 3) {
    throw Error(ErrorCode::ShapeMismatch, "ia_fuse: expected C×H×W tensors");
  }
  const int h = f_l.dim(1);
  const int w = f_l.dim(2);

  const Tensor high = (f_h.dim(1) == h && f_h.dim(2) == w)
                          ? f_h
                          : upsample_bilinear(f_h, h, w);
  const Tensor global = (f_g.dim(1) == h && f_g.dim(2) == w)
                            ? f_g
                            : upsample_bilinear(f_g, h, w);

  const Tensor p_l = conv2d(f_l, params.proj_low);
  const Tensor p_h = conv2d(high, params.proj_high);
  const Tensor p_g = conv2d(global, params.proj_global);

  if (!p_l.same_shape(p_h) || !p_l.same_shape(p_g)) {
    throw Error(ErrorCode::ShapeMismatch,
                "ia_fuse: projections must agree on a common channel width");
  }

  const Tensor detail_term = conv2d(elementwise_mul(p_l, p_h), params.conv_detail);
  const Tensor semantic_term = conv2d(p_h, params.conv_semantic);
  const Tensor context_term = conv2d(elementwise_mul(p_l, p_g), params.conv_context);

  if (!detail_term.same_shape(semantic_term) || !detail_term.same_shape(context_term)) {
    throw Error(ErrorCode::ShapeMismatch,
                "ia_fuse: branch convolutions must agree on the output width");
  }
  return elementwise_add(elementwise_add(detail_term, semantic_term), context_term);
}

Tensor ia_fuse(const Tensor& f_l, const Tensor& f_h, const Tensor& f_g,
               const IaParams& params) {
  return relu(ia_fuse_preactivation(f_l, f_h, f_g, params));
}

}  // namespace mattekit::net
