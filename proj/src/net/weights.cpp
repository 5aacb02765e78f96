#include "mattekit/net/weights.hpp"

#include <fstream>
#include <limits>
#include <span>
#include <sstream>

#include "mattekit/core/errors.hpp"

namespace mattekit::net {

namespace {

constexpr const char* kMagic = "mattekit-weights";
constexpr int kVersion = 1;

[[noreturn]] void parse_fail(const std::string& origin, const std::string& what) {
  throw Error(ErrorCode::ParseError, origin + ": " + what);
}

}  // namespace

NamedTensors parse_weights(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) {
    parse_fail(origin, "missing '" + std::string(kMagic) + "' header");
  }
  if (version != kVersion) {
    parse_fail(origin, "unsupported weights version " + std::to_string(version));
  }

  NamedTensors out;
  std::string name;
  while (in >> name) {
    int rank = 0;
    if (!(in >> rank)) parse_fail(origin, "array '" + name + "': missing rank");
    if (rank < 1 || rank > 8) {
      parse_fail(origin, "array '" + name + "': rank " + std::to_string(rank) +
                             " out of range [1, 8]");
    }
    std::vector<int> shape(rank);
    size_t volume = 1;
    for (int d = 0; d < rank; ++d) {
      if (!(in >> shape[d]) || shape[d] <= 0) {
        parse_fail(origin, "array '" + name + "': bad dimension " + std::to_string(d));
      }
      volume *= static_cast<size_t>(shape[d]);
    }
    std::vector<float> values(volume);
    for (size_t i = 0; i < volume; ++i) {
      if (!(in >> values[i])) {
        parse_fail(origin, "array '" + name + "': expected " + std::to_string(volume) +
                               " values, got " + std::to_string(i));
      }
    }
    if (out.contains(name)) parse_fail(origin, "duplicate array '" + name + "'");
    out.emplace(name, Tensor(std::move(shape), std::move(values)));
  }
  return out;
}

std::string serialize_weights(const NamedTensors& tensors) {
  std::ostringstream out;
  out << kMagic << " " << kVersion << "\n";
  out.precision(std::numeric_limits<float>::max_digits10);
  for (const auto& [name, tensor] : tensors) {
    out << name << " " << tensor.rank();
    for (const int d : tensor.shape()) out << " " << d;
    out << "\n";
    const std::span<const float> data = tensor.data();
    for (size_t i = 0; i < data.size(); ++i) {
      out << data[i] << (i + 1 == data.size() ? "\n" : " ");
    }
  }
  return out.str();
}

NamedTensors load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, path + ": cannot open weights file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_weights(buf.str(), path);
}

void save_weights(const NamedTensors& tensors, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, path + ": cannot open weights file for writing");
  out << serialize_weights(tensors);
  if (!out.good()) throw Error(ErrorCode::IoError, path + ": write failed");
}

ConvWeights conv_from_named(const NamedTensors& tensors, const std::string& name) {
  const auto wit = tensors.find(name + ".weight");
  const auto bit = tensors.find(name + ".bias");
  if (wit == tensors.end() || bit == tensors.end()) {
    throw Error(ErrorCode::ParseError,
                "weights: missing '" + name + ".weight' or '" + name + ".bias'");
  }
  const Tensor& wt = wit->second;
  const Tensor& bt = bit->second;
  if (wt.rank() != 4) {
    throw Error(ErrorCode::ShapeMismatch,
                "weights: '" + name + ".weight' must be rank 4 (out×in×kh×kw)");
  }
  if (bt.rank() != 1 || bt.dim(0) != wt.dim(0)) {
    throw Error(ErrorCode::ShapeMismatch,
                "weights: '" + name + ".bias' must be rank 1 with out_channels entries");
  }

  ConvWeights cw;
  cw.out_channels = wt.dim(0);
  cw.in_channels = wt.dim(1);
  cw.kernel_h = wt.dim(2);
  cw.kernel_w = wt.dim(3);
  cw.values.assign(wt.data().begin(), wt.data().end());
  cw.bias.assign(bt.data().begin(), bt.data().end());
  cw.validate();
  return cw;
}

}  // namespace mattekit::net
