#include "mattekit/net/ops.hpp"

#include <algorithm>

#include "mattekit/core/errors.hpp"
#include "mattekit/core/resize.hpp"

namespace mattekit::net {

namespace {

void require_chw(const Tensor& t, const char* where) {
  if (t.rank() != 3) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(where) + ": expected a C×H×W tensor, got rank " +
                    std::to_string(t.rank()));
  }
}

}  // namespace

ConvWeights ConvWeights::zeros(int out_ch, int in_ch, int kh, int kw) {
  ConvWeights w;
  w.out_channels = out_ch;
  w.in_channels = in_ch;
  w.kernel_h = kh;
  w.kernel_w = kw;
  w.values.assign(static_cast<size_t>(out_ch) * in_ch * kh * kw, 0.0f);
  w.bias.assign(static_cast<size_t>(out_ch), 0.0f);
  return w;
}

void ConvWeights::validate() const {
  if (out_channels <= 0 || in_channels <= 0 || kernel_h <= 0 || kernel_w <= 0) {
    throw Error(ErrorCode::ZeroDimension, "conv weights: all dimensions must be positive");
  }
  const size_t expect = static_cast<size_t>(out_channels) * in_channels * kernel_h * kernel_w;
  if (values.size() != expect) {
    throw Error(ErrorCode::ShapeMismatch,
                "conv weights: value count " + std::to_string(values.size()) +
                    " does not match dims (" + std::to_string(expect) + ")");
  }
  if (bias.size() != static_cast<size_t>(out_channels)) {
    throw Error(ErrorCode::ShapeMismatch,
                "conv weights: bias count " + std::to_string(bias.size()) +
                    " does not match out_channels " + std::to_string(out_channels));
  }
}

Tensor conv2d(const Tensor& input, const ConvWeights& weights) {
  require_chw(input, "conv2d");
  weights.validate();
  const int c_in = input.dim(0);
  const int h = input.dim(1);
  const int w = input.dim(2);
  if (c_in != weights.in_channels) {
    throw Error(ErrorCode::ChannelMismatch,
                "conv2d: input has " + std::to_string(c_in) + " channels, weights expect " +
                    std::to_string(weights.in_channels));
  }

  const int pad_top = (weights.kernel_h - 1) / 2;
  const int pad_left = (weights.kernel_w - 1) / 2;

  Tensor out = Tensor::zeros({weights.out_channels, h, w});
  std::span<const float> in_data = input.data();
  std::span<float> out_data = out.mutable_data();
  const size_t plane = static_cast<size_t>(h) * w;
  for (int o = 0; o < weights.out_channels; ++o) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double acc = weights.bias[o];
        for (int i = 0; i < c_in; ++i) {
          const float* src = in_data.data() + static_cast<size_t>(i) * plane;
          for (int ky = 0; ky < weights.kernel_h; ++ky) {
            const int yy = y + ky - pad_top;
            if (yy < 0 || yy >= h) continue;
            for (int kx = 0; kx < weights.kernel_w; ++kx) {
              const int xx = x + kx - pad_left;
              if (xx < 0 || xx >= w) continue;
              acc += static_cast<double>(weights.at(o, i, ky, kx)) *
                     src[static_cast<size_t>(yy) * w + xx];
            }
          }
        }
        out_data[(static_cast<size_t>(o) * h + y) * w + x] = static_cast<float>(acc);
      }
    }
  }
  return out;
}

Tensor relu(const Tensor& input) {
  Tensor out = input;
  for (float& v : out.mutable_data()) v = std::max(v, 0.0f);
  return out;
}

std::pair<Tensor, Tensor> channel_split(const Tensor& input) {
  require_chw(input, "channel_split");
  const int c = input.dim(0);
  if (c % 2 != 0) {
    throw Error(ErrorCode::OddSplit,
                "channel_split: channel count " + std::to_string(c) + " is odd");
  }
  const int half = c / 2;
  const int h = input.dim(1);
  const int w = input.dim(2);
  const size_t half_size = static_cast<size_t>(half) * h * w;

  Tensor first = Tensor::zeros({half, h, w});
  Tensor second = Tensor::zeros({half, h, w});
  std::span<const float> in_data = input.data();
  std::copy_n(in_data.begin(), half_size, first.mutable_data().begin());
  std::copy_n(in_data.begin() + static_cast<std::ptrdiff_t>(half_size), half_size,
              second.mutable_data().begin());
  return {std::move(first), std::move(second)};
}

namespace {

Tensor elementwise(const Tensor& a, const Tensor& b, bool mul, const char* where) {
  require_chw(a, where);
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::ShapeMismatch, std::string(where) + ": tensor shapes differ");
  }
  Tensor out = a;
  std::span<float> out_data = out.mutable_data();
  std::span<const float> b_data = b.data();
  for (size_t i = 0; i < out_data.size(); ++i) {
    out_data[i] = mul ? out_data[i] * b_data[i] : out_data[i] + b_data[i];
  }
  return out;
}

}  // namespace

Tensor elementwise_mul(const Tensor& a, const Tensor& b) {
  return elementwise(a, b, /*mul=*/true, "elementwise_mul");
}

Tensor elementwise_add(const Tensor& a, const Tensor& b) {
  return elementwise(a, b, /*mul=*/false, "elementwise_add");
}

std::vector<double> global_avg_pool(const Tensor& input) {
  require_chw(input, "global_avg_pool");
  const int c = input.dim(0);
  const size_t plane = static_cast<size_t>(input.dim(1)) * input.dim(2);
  std::vector<double> out(c);
  for (int i = 0; i < c; ++i) {
    double sum = 0.0;
    const float* src = input.data().data() + static_cast<size_t>(i) * plane;
    for (size_t p = 0; p < plane; ++p) sum += src[p];
    out[i] = sum / static_cast<double>(plane);
  }
  return out;
}

Tensor upsample_bilinear(const Tensor& input, int out_h, int out_w) {
  require_chw(input, "upsample_bilinear");
  if (out_h <= 0 || out_w <= 0) {
    throw Error(ErrorCode::ZeroDimension, "upsample_bilinear: output dims must be positive");
  }
  const int c = input.dim(0);
  const int h = input.dim(1);
  const int w = input.dim(2);
  Tensor out = Tensor::zeros({c, out_h, out_w});
  for (int i = 0; i < c; ++i) {
    detail::resize_plane_bilinear<float>(
        input.data().data() + static_cast<size_t>(i) * h * w, h, w,
        out.mutable_data().data() + static_cast<size_t>(i) * out_h * out_w, out_h, out_w);
  }
  return out;
}

}  // namespace mattekit::net
