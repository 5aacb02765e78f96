#ifndef MATTEKIT_NET_WEIGHTS_HPP_
#define MATTEKIT_NET_WEIGHTS_HPP_

#include <map>
#include <string>

#include "mattekit/core/tensor.hpp"
#include "mattekit/net/ops.hpp"

namespace mattekit::net {

/// Named-array container, loadable without any learning framework.
///
/// Text format, whitespace-delimited:
///   mattekit-weights 1
///   <name> <rank> <d0> … <dk-1>
///   <v0> <v1> … (row-major, count = product of dims)
///   …repeat per array…
/// Names are single tokens (no spaces). Floats round-trip at full precision.
using NamedTensors = std::map<std::string, Tensor>;

NamedTensors load_weights(const std::string& path);
void save_weights(const NamedTensors& tensors, const std::string& path);

NamedTensors parse_weights(const std::string& text, const std::string& origin = "<weights>");
std::string serialize_weights(const NamedTensors& tensors);

/// Builds ConvWeights from "<name>.weight" (rank 4: out×in×kh×kw) and
/// "<name>.bias" (rank 1: out) entries.
ConvWeights conv_from_named(const NamedTensors& tensors, const std::string& name);

}  // namespace mattekit::net

#endif  // MATTEKIT_NET_WEIGHTS_HPP_
