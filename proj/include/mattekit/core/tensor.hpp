#ifndef MATTEKIT_CORE_TENSOR_HPP_
#define MATTEKIT_CORE_TENSOR_HPP_

#include <span>
#include <vector>

#include "mattekit/core/errors.hpp"

namespace mattekit {

/// N-dimensional float array, row-major. Net-reference ops use C×H×W rank-3 tensors.
class Tensor {
 public:
  Tensor(std::vector<int> shape, std::vector<float> data);

  static Tensor zeros(std::vector<int> shape);
  static Tensor filled(std::vector<int> shape, float value);

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  size_t size() const { return data_.size(); }

  std::span<const float> data() const { return data_; }
  std::span<float> mutable_data() { return data_; }

  int dim(int i) const { return shape_[i]; }

  // Rank-3 C×H×W accessors.
  float at(int c, int y, int x) const {
    return data_[(static_cast<size_t>(c) * shape_[1] + y) * shape_[2] + x];
  }
  float& at(int c, int y, int x) {
    return data_[(static_cast<size_t>(c) * shape_[1] + y) * shape_[2] + x];
  }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

 private:
  std::vector<int> shape_;
  std::vector<float> data_;
};

size_t shape_volume(const std::vector<int>& shape);

}  // namespace mattekit

#endif  // MATTEKIT_CORE_TENSOR_HPP_
