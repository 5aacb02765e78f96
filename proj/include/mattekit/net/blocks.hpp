#ifndef MATTEKIT_NET_BLOCKS_HPP_
#define MATTEKIT_NET_BLOCKS_HPP_

#include "mattekit/net/ops.hpp"

namespace mattekit::net {

// Forward-pass reference blocks of the coarse module. Channel widths are free
// parameters so desk-scale tests can shrink the full-size 2048/512/256 stack
// while keeping the 2:1 split between the attention conv and the feature conv.

/// Head attention:
///   (W, b) = channel_split(conv1(f_top))   — first half W, second half b
///   f̂      = ReLU(conv2(f_top))
///   out    = ReLU(W ⊙ f̂ + b)
/// conv1's output channel count must be even and equal 2× conv2's.
Tensor head_attention(const Tensor& f_top, const ConvWeights& conv1, const ConvWeights& conv2);

/// Per-channel gate parameters for the global context block.
struct GcfGate {
  std::vector<float> scale;  // one per channel
  std::vector<float> bias;
};

/// Global context flow: g_c = spatial mean of channel c,
/// weight_c = sigmoid(scale_c·g_c + bias_c), out(c,·,·) = weight_c · f(c,·,·).
Tensor gcf(const Tensor& f, const GcfGate& gate);

/// Parameters of the interweaved aggregation block: per-branch 1×1 projections
/// to a common width plus one conv per branch term.
struct IaParams {
  ConvWeights proj_low;      // applies to f_l (detail path)
  ConvWeights proj_high;     // applies to f_h (semantic path)
  ConvWeights proj_global;   // applies to f_g (context path)
  ConvWeights conv_detail;   // on p(f_l) ⊙ p(f_h)
  ConvWeights conv_semantic; // on p(f_h)
  ConvWeights conv_context;  // on p(f_l) ⊙ p(f_g)
};

/// Interweaved aggregation. f_h and f_g are bilinearly upsampled to f_l's
/// spatial size, each input goes through its 1×1 projection, and
///   out = ReLU(conv_detail(p_l ⊙ p_h) + conv_semantic(p_h) + conv_context(p_l ⊙ p_g)).
/// The three branch terms are computed separately and then summed, so zeroing
/// one branch's conv removes exactly its contribution.
Tensor ia_fuse(const Tensor& f_l, const Tensor& f_h, const Tensor& f_g, const IaParams& params);

/// The pre-ReLU sum of ia_fuse's three branch terms (the block's linear part).
Tensor ia_fuse_preactivation(const Tensor& f_l, const Tensor& f_h, const Tensor& f_g,
                             const IaParams& params);

}  // namespace mattekit::net

#endif  // MATTEKIT_NET_BLOCKS_HPP_
