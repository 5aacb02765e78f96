#ifndef MATTEKIT_LOSSES_PYRAMID_HPP_
#define MATTEKIT_LOSSES_PYRAMID_HPP_

#include <vector>

namespace mattekit::losses {

/// One pyramid level as a raw double plane.
struct Plane {
  int height = 0;
  int width = 0;
  std::vector<double> data;

  double at(int y, int x) const { return data[y * width + x]; }
};

/// 5×5 binomial blur ([1,4,6,4,1]/16 outer product) with reflected borders,
/// applied separably.
Plane binomial_blur5(const Plane& in);

/// Blur then keep every second row/column (indices 0,2,4,…); output size is
/// ceil(n/2) per axis.
Plane downsample2(const Plane& in);

/// Bilinear upsample (half-pixel centers) to the requested size.
Plane upsample_to(const Plane& in, int out_h, int out_w);

/// Laplacian pyramid with `levels` bands: Lap_k = G_k − upsample(G_{k+1}) for
/// k < levels−1 and Lap_{levels−1} = G_{levels−1}, where G_0 is the input and
/// G_{k+1} = downsample2(G_k).
std::vector<Plane> laplacian_pyramid(const Plane& in, int levels);

/// Symmetric border fold valid for any n ≥ 1 (…2,1,0,1,2,…,n−1,n−2…).
int reflect_index(int i, int n);

}  // namespace mattekit::losses

#endif  // MATTEKIT_LOSSES_PYRAMID_HPP_
