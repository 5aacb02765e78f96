#include "mattekit/core/tensor.hpp"

#include <string>

namespace mattekit {

size_t shape_volume(const std::vector<int>& shape) {
  size_t n = 1;
  for (int d : shape) n *= static_cast<size_t>(d);
  return n;
}

Tensor::Tensor(std::vector<int> shape, std::vector<float> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_.empty()) {
    throw Error(ErrorCode::ShapeMismatch, "tensor rank must be >= 1");
  }
  for (int d : shape_) {
    if (d < 1) {
      throw Error(ErrorCode::ZeroDimension, "tensor dimension " + std::to_string(d));
    }
  }
  const size_t expected = shape_volume(shape_);
  if (data_.size() != expected) {
    throw Error(ErrorCode::ShapeMismatch,
                "tensor data length " + std::to_string(data_.size()) + " != shape volume " +
                    std::to_string(expected));
  }
}

Tensor Tensor::zeros(std::vector<int> shape) {
  const size_t n = shape_volume(shape);
  return Tensor(std::move(shape), std::vector<float>(n, 0.0f));
}

Tensor Tensor::filled(std::vector<int> shape, float value) {
  const size_t n = shape_volume(shape);
  return Tensor(std::move(shape), std::vector<float>(n, value));
}

}  // namespace mattekit
