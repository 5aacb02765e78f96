// Python bindings for the mattekit core. Image data crosses the boundary as
// numpy arrays: images are (H, W, C) float32 in [0, 1] (C = 1 or 3), mattes
// and masks are (H, W), net tensors are (C, H, W). Conversion to the planar
// internal layout happens here.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mattekit/cli/driver.hpp"
#include "mattekit/compose/compositor.hpp"
#include "mattekit/core/manifest.hpp"
#include "mattekit/core/resize.hpp"
#include "mattekit/fusion/fusion.hpp"
#include "mattekit/harmony/harmony.hpp"
#include "mattekit/io/png_io.hpp"
#include "mattekit/losses/losses.hpp"
#include "mattekit/metrics/report.hpp"
#include "mattekit/net/blocks.hpp"
#include "mattekit/net/weights.hpp"

namespace py = pybind11;
using namespace mattekit;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;
using ByteArray = py::array_t<uint8_t, py::array::c_style | py::array::forcecast>;

ImageBuffer image_from_array(const FloatArray& arr) {
  if (arr.ndim() == 2) {
    const int h = static_cast<int>(arr.shape(0));
    const int w = static_cast<int>(arr.shape(1));
    std::vector<float> planar(arr.data(), arr.data() + arr.size());
    return ImageBuffer(h, w, 1, std::move(planar));
  }
  if (arr.ndim() != 3) {
    throw Error(ErrorCode::ShapeMismatch, "image array must be (H, W) or (H, W, C)");
  }
  const int h = static_cast<int>(arr.shape(0));
  const int w = static_cast<int>(arr.shape(1));
  const int c = static_cast<int>(arr.shape(2));
  const size_t pixels = static_cast<size_t>(h) * w;
  std::vector<float> planar(pixels * c);
  const float* src = arr.data();
  for (size_t p = 0; p < pixels; ++p) {
    for (int ch = 0; ch < c; ++ch) planar[ch * pixels + p] = src[p * c + ch];
  }
  return ImageBuffer(h, w, c, std::move(planar));
}

py::array image_to_array(const ImageBuffer& img) {
  const size_t pixels = static_cast<size_t>(img.height()) * img.width();
  py::array_t<float> out({img.height(), img.width(), img.channels()});
  float* dst = out.mutable_data();
  for (size_t p = 0; p < pixels; ++p) {
    for (int ch = 0; ch < img.channels(); ++ch) {
      dst[p * img.channels() + ch] = img.data()[ch * pixels + p];
    }
  }
  return out;
}

AlphaMatte matte_from_array(const FloatArray& arr) {
  if (arr.ndim() != 2) {
    throw Error(ErrorCode::ShapeMismatch, "matte array must be 2-D (H, W)");
  }
  const int h = static_cast<int>(arr.shape(0));
  const int w = static_cast<int>(arr.shape(1));
  std::vector<float> vals(arr.data(), arr.data() + arr.size());
  return AlphaMatte(h, w, std::move(vals));
}

py::array matte_to_array(const AlphaMatte& m) {
  py::array_t<float> out({m.height(), m.width()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

BinaryMask mask_from_array(const ByteArray& arr) {
  if (arr.ndim() != 2) {
    throw Error(ErrorCode::ShapeMismatch, "mask array must be 2-D (H, W)");
  }
  const int h = static_cast<int>(arr.shape(0));
  const int w = static_cast<int>(arr.shape(1));
  std::vector<uint8_t> bits(arr.data(), arr.data() + arr.size());
  return BinaryMask(h, w, std::move(bits));
}

py::array mask_to_array(const BinaryMask& m) {
  py::array_t<uint8_t> out({m.height(), m.width()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

Tensor tensor_from_array(const FloatArray& arr) {
  if (arr.ndim() != 3) {
    throw Error(ErrorCode::ShapeMismatch, "net tensor array must be 3-D (C, H, W)");
  }
  std::vector<int> shape{static_cast<int>(arr.shape(0)), static_cast<int>(arr.shape(1)),
                         static_cast<int>(arr.shape(2))};
  std::vector<float> data(arr.data(), arr.data() + arr.size());
  return Tensor(std::move(shape), std::move(data));
}

py::array tensor_to_array(const Tensor& t) {
  py::array_t<float> out({t.dim(0), t.dim(1), t.dim(2)});
  std::copy(t.data().begin(), t.data().end(), out.mutable_data());
  return out;
}

net::ConvWeights conv_from_arrays(const FloatArray& weight, const FloatArray& bias) {
  if (weight.ndim() != 4 || bias.ndim() != 1) {
    throw Error(ErrorCode::ShapeMismatch,
                "conv weights must be (O, I, KH, KW) with a (O,) bias");
  }
  net::ConvWeights w;
  w.out_channels = static_cast<int>(weight.shape(0));
  w.in_channels = static_cast<int>(weight.shape(1));
  w.kernel_h = static_cast<int>(weight.shape(2));
  w.kernel_w = static_cast<int>(weight.shape(3));
  w.values.assign(weight.data(), weight.data() + weight.size());
  w.bias.assign(bias.data(), bias.data() + bias.size());
  w.validate();
  return w;
}

std::optional<BinaryMask> optional_mask(const py::object& region) {
  if (region.is_none()) return std::nullopt;
  return mask_from_array(region.cast<ByteArray>());
}

metrics::MetricOptions metric_options_from_kwargs(double sad_scale, double mse_scale,
                                                  double grad_scale, double conn_scale,
                                                  double grad_sigma, double conn_step,
                                                  double conn_threshold) {
  metrics::MetricOptions mo;
  mo.sad_scale = sad_scale;
  mo.mse_scale = mse_scale;
  mo.grad_scale = grad_scale;
  mo.conn_scale = conn_scale;
  mo.grad_sigma = grad_sigma;
  mo.conn_step = conn_step;
  mo.conn_threshold = conn_threshold;
  return mo;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "mattekit core: compositing, harmonization, fusion, losses, metrics";

  py::register_exception<Error>(m, "MatteError");

  // --- compositing -------------------------------------------------------
  m.def(
      "composite",
      [](const FloatArray& fg, const FloatArray& bg, const FloatArray& alpha) {
        return image_to_array(
            compose::composite(image_from_array(fg), image_from_array(bg),
                               matte_from_array(alpha)));
      },
      py::arg("fg"), py::arg("bg"), py::arg("alpha"),
      "alpha-blend: C = alpha*F + (1-alpha)*B");

  m.def(
      "binarize_alpha",
      [](const FloatArray& alpha) {
        return mask_to_array(compose::binarize_alpha(matte_from_array(alpha)));
      },
      py::arg("alpha"), "1 wherever alpha > 0");

  m.def(
      "make_trimap",
      [](const FloatArray& alpha, int radius) {
        return image_to_array(compose::make_trimap(matte_from_array(alpha), radius));
      },
      py::arg("alpha"), py::arg("radius") = 15,
      "three-region map {0, 0.5, 1} with a morphological unknown band");

  // --- harmonization ------------------------------------------------------
  m.def(
      "masked_stats",
      [](const FloatArray& image, const ByteArray& mask, double epsilon) {
        const harmony::RegionStats st =
            harmony::masked_stats(image_from_array(image), mask_from_array(mask), epsilon);
        return py::make_tuple(st.mean, st.std, st.pixel_count);
      },
      py::arg("image"), py::arg("mask"), py::arg("epsilon") = 1e-5,
      "per-channel (mean, std, count) over masked pixels");

  m.def(
      "harmonize",
      [](const FloatArray& composite, const ByteArray& fg_mask, double epsilon,
         bool literal_eq10) {
        harmony::HarmonyOptions opt;
        opt.epsilon = epsilon;
        opt.literal_eq10 = literal_eq10;
        return image_to_array(
            harmony::harmonize(image_from_array(composite), mask_from_array(fg_mask), opt));
      },
      py::arg("composite"), py::arg("fg_mask"), py::arg("epsilon") = 1e-5,
      py::arg("literal_eq10") = false,
      "re-render the masked region to match the complement's statistics");

  // --- fusion ---------------------------------------------------------
  m.def(
      "f_quant",
      [](const FloatArray& alpha_h, double lo, double hi) {
        fusion::FusionOptions opt;
        opt.quant_lo = lo;
        opt.quant_hi = hi;
        return mask_to_array(fusion::f_quant(matte_from_array(alpha_h), opt));
      },
      py::arg("alpha_h"), py::arg("lo") = 0.0, py::arg("hi") = 1.0,
      "edge mask: 1 iff lo < alpha < hi");

  m.def(
      "fuse",
      [](const FloatArray& alpha_h, const FloatArray& alpha_l, double lo, double hi) {
        fusion::FusionOptions opt;
        opt.quant_lo = lo;
        opt.quant_hi = hi;
        return matte_to_array(
            fusion::fuse(matte_from_array(alpha_h), matte_from_array(alpha_l), opt));
      },
      py::arg("alpha_h"), py::arg("alpha_l"), py::arg("lo") = 0.0, py::arg("hi") = 1.0,
      "coarse-to-fine blend: alpha_h on the edge mask, upsampled alpha_l elsewhere");

  m.def(
      "resize_bilinear",
      [](const FloatArray& matte, int out_h, int out_w) {
        return matte_to_array(resize_bilinear(matte_from_array(matte), out_h, out_w));
      },
      py::arg("matte"), py::arg("out_h"), py::arg("out_w"),
      "half-pixel-center bilinear resample");

  // --- losses -----------------------------------------------------------
  m.def(
      "bce",
      [](const FloatArray& pred, const ByteArray& target) {
        return losses::bce(matte_from_array(pred), mask_from_array(target));
      },
      py::arg("pred"), py::arg("target"),
      "binary cross-entropy, predictions clamped to [1e-7, 1-1e-7]");

  m.def(
      "coarse_loss",
      [](double dom, const std::array<double, 3>& aux) { return losses::coarse_loss(dom, aux); },
      py::arg("dom"), py::arg("aux"), "dom + 0.8*aux[0] + 0.6*aux[1] + 0.4*aux[2]");

  m.def(
      "l1_loss",
      [](const FloatArray& pred, const FloatArray& gt, const ByteArray& g) {
        return losses::l1_loss(matte_from_array(pred), matte_from_array(gt),
                               mask_from_array(g));
      },
      py::arg("pred"), py::arg("gt"), py::arg("g"), "mean |pred-gt| over {g=1}");

  m.def(
      "composition_loss",
      [](const FloatArray& pred, const FloatArray& gt, const FloatArray& fg,
         const FloatArray& bg, const ByteArray& g) {
        return losses::composition_loss(matte_from_array(pred), matte_from_array(gt),
                                        image_from_array(fg), image_from_array(bg),
                                        mask_from_array(g));
      },
      py::arg("pred"), py::arg("gt"), py::arg("fg"), py::arg("bg"), py::arg("g"),
      "mean |C(pred) - C(gt)| over {g=1} pixels and channels");

  m.def(
      "laplacian_loss",
      [](const FloatArray& pred, const FloatArray& gt, const ByteArray& g, int levels) {
        return losses::laplacian_loss(matte_from_array(pred), matte_from_array(gt),
                                      mask_from_array(g), levels);
      },
      py::arg("pred"), py::arg("gt"), py::arg("g"), py::arg("levels") = 5,
      "2^k-weighted multi-band L1 on the masked mattes");

  m.def(
      "refine_loss",
      [](const FloatArray& pred, const FloatArray& gt, const FloatArray& fg,
         const FloatArray& bg, const ByteArray& g) {
        return losses::refine_loss(matte_from_array(pred), matte_from_array(gt),
                                   image_from_array(fg), image_from_array(bg),
                                   mask_from_array(g));
      },
      py::arg("pred"), py::arg("gt"), py::arg("fg"), py::arg("bg"), py::arg("g"),
      "l1 + composition + laplacian on the unknown region");

  // --- metrics ------------------------------------------------------------
  const auto metric_def = [&m](const char* name, auto fn, const char* doc) {
    m.def(
        name, fn, py::arg("pred"), py::arg("gt"), py::arg("region") = py::none(),
        py::arg("sad_scale") = 1e-3, py::arg("mse_scale") = 1e3, py::arg("grad_scale") = 1e-1,
        py::arg("conn_scale") = 1e-3, py::arg("grad_sigma") = 1.4, py::arg("conn_step") = 0.1,
        py::arg("conn_threshold") = 0.15, doc);
  };

  metric_def(
      "sad",
      [](const FloatArray& pred, const FloatArray& gt, const py::object& region,
         double sad_scale, double mse_scale, double grad_scale, double conn_scale,
         double grad_sigma, double conn_step, double conn_threshold) {
        const auto mo = metric_options_from_kwargs(sad_scale, mse_scale, grad_scale,
                                                   conn_scale, grad_sigma, conn_step,
                                                   conn_threshold);
        const auto reg = optional_mask(region);
        return metrics::sad(matte_from_array(pred), matte_from_array(gt),
                            reg ? &*reg : nullptr, mo);
      },
      "scaled sum of absolute differences");

  metric_def(
      "mse",
      [](const FloatArray& pred, const FloatArray& gt, const py::object& region,
         double sad_scale, double mse_scale, double grad_scale, double conn_scale,
         double grad_sigma, double conn_step, double conn_threshold) {
        const auto mo = metric_options_from_kwargs(sad_scale, mse_scale, grad_scale,
                                                   conn_scale, grad_sigma, conn_step,
                                                   conn_threshold);
        const auto reg = optional_mask(region);
        return metrics::mse(matte_from_array(pred), matte_from_array(gt),
                            reg ? &*reg : nullptr, mo);
      },
      "scaled mean squared error");

  metric_def(
      "grad_error",
      [](const FloatArray& pred, const FloatArray& gt, const py::object& region,
         double sad_scale, double mse_scale, double grad_scale, double conn_scale,
         double grad_sigma, double conn_step, double conn_threshold) {
        const auto mo = metric_options_from_kwargs(sad_scale, mse_scale, grad_scale,
                                                   conn_scale, grad_sigma, conn_step,
                                                   conn_threshold);
        const auto reg = optional_mask(region);
        return metrics::grad_error(matte_from_array(pred), matte_from_array(gt),
                                   reg ? &*reg : nullptr, mo);
      },
      "scaled squared difference of Gaussian-derivative gradient magnitudes");

  metric_def(
      "conn_error",
      [](const FloatArray& pred, const FloatArray& gt, const py::object& region,
         double sad_scale, double mse_scale, double grad_scale, double conn_scale,
         double grad_sigma, double conn_step, double conn_threshold) {
        const auto mo = metric_options_from_kwargs(sad_scale, mse_scale, grad_scale,
                                                   conn_scale, grad_sigma, conn_step,
                                                   conn_threshold);
        const auto reg = optional_mask(region);
        return metrics::conn_error(matte_from_array(pred), matte_from_array(gt),
                                   reg ? &*reg : nullptr, mo);
      },
      "scaled connectivity error against the largest 4-connected opaque region");

  m.def(
      "evaluate_corpus",
      [](const std::string& manifest_path, const std::string& pred_dir,
         const std::string& region, int threads, int resize) {
        const CorpusManifest manifest = CorpusManifest::load(manifest_path);
        metrics::EvalOptions opt;
        if (region == "whole") {
          opt.region = metrics::RegionMode::Whole;
        } else if (region == "unknown") {
          opt.region = metrics::RegionMode::Unknown;
        } else {
          throw Error(ErrorCode::ParseError, "region must be 'whole' or 'unknown'");
        }
        opt.threads = threads;
        opt.resize = resize;
        const metrics::MetricsReport report = metrics::evaluate_corpus(manifest, pred_dir, opt);
        py::list per_image;
        for (const auto& pim : report.per_image) {
          py::dict rec;
          rec["id"] = pim.id;
          rec["ok"] = pim.ok;
          if (pim.ok) {
            rec["sad"] = pim.sad;
            rec["mse"] = pim.mse;
            rec["grad"] = pim.grad;
            rec["conn"] = pim.conn;
            rec["warnings"] = pim.warnings;
          } else {
            rec["error"] = pim.error;
          }
          per_image.append(rec);
        }
        py::dict out;
        out["per_image"] = per_image;
        out["mean_sad"] = report.aggregate.mean_sad;
        out["mean_mse"] = report.aggregate.mean_mse;
        out["mean_grad"] = report.aggregate.mean_grad;
        out["mean_conn"] = report.aggregate.mean_conn;
        out["count"] = report.count;
        out["failed"] = report.failed;
        return out;
      },
      py::arg("manifest"), py::arg("pred_dir"), py::arg("region") = "whole",
      py::arg("threads") = 1, py::arg("resize") = 0,
      "score pred_dir/<id>.png for every manifest record");

  // --- reference net blocks ------------------------------------------------
  m.def(
      "conv2d",
      [](const FloatArray& input, const FloatArray& weight, const FloatArray& bias) {
        return tensor_to_array(
            net::conv2d(tensor_from_array(input), conv_from_arrays(weight, bias)));
      },
      py::arg("input"), py::arg("weight"), py::arg("bias"),
      "same-padded cross-correlation on a (C, H, W) tensor");

  m.def(
      "head_attention",
      [](const FloatArray& f_top, const FloatArray& w1, const FloatArray& b1,
         const FloatArray& w2, const FloatArray& b2) {
        return tensor_to_array(net::head_attention(tensor_from_array(f_top),
                                                   conv_from_arrays(w1, b1),
                                                   conv_from_arrays(w2, b2)));
      },
      py::arg("f_top"), py::arg("w1"), py::arg("b1"), py::arg("w2"), py::arg("b2"),
      "ReLU(W ⊙ ReLU(conv2(x)) + b) with (W, b) split from conv1(x)");

  m.def(
      "gcf",
      [](const FloatArray& f, const std::vector<float>& scale, const std::vector<float>& bias) {
        net::GcfGate gate;
        gate.scale = scale;
        gate.bias = bias;
        return tensor_to_array(net::gcf(tensor_from_array(f), gate));
      },
      py::arg("f"), py::arg("scale"), py::arg("bias"),
      "sigmoid channel gate driven by global average pooling");

  m.def(
      "ia_fuse",
      [](const FloatArray& f_l, const FloatArray& f_h, const FloatArray& f_g,
         const py::dict& params) {
        net::IaParams p;
        auto conv_of = [&params](const char* wkey, const char* bkey) {
          return conv_from_arrays(params[wkey].cast<FloatArray>(),
                                  params[bkey].cast<FloatArray>());
        };
        p.proj_low = conv_of("proj_low.weight", "proj_low.bias");
        p.proj_high = conv_of("proj_high.weight", "proj_high.bias");
        p.proj_global = conv_of("proj_global.weight", "proj_global.bias");
        p.conv_detail = conv_of("conv_detail.weight", "conv_detail.bias");
        p.conv_semantic = conv_of("conv_semantic.weight", "conv_semantic.bias");
        p.conv_context = conv_of("conv_context.weight", "conv_context.bias");
        return tensor_to_array(net::ia_fuse(tensor_from_array(f_l), tensor_from_array(f_h),
                                            tensor_from_array(f_g), p));
      },
      py::arg("f_l"), py::arg("f_h"), py::arg("f_g"), py::arg("params"),
      "detail/semantic/context three-branch aggregation");

  // --- PNG I/O and the CLI ------------------------------------------------
  m.def(
      "read_image", [](const std::string& path) { return image_to_array(io::read_image(path)); },
      py::arg("path"));
  m.def(
      "read_matte", [](const std::string& path) { return matte_to_array(io::read_matte(path)); },
      py::arg("path"));
  m.def(
      "write_image",
      [](const FloatArray& image, const std::string& path, int bit_depth) {
        io::write_image(image_from_array(image), path, bit_depth);
      },
      py::arg("image"), py::arg("path"), py::arg("bit_depth") = 8);
  m.def(
      "write_matte",
      [](const FloatArray& matte, const std::string& path, int bit_depth) {
        io::write_matte(matte_from_array(matte), path, bit_depth);
      },
      py::arg("matte"), py::arg("path"), py::arg("bit_depth") = 8);

  m.def(
      "run_cli", [](const std::vector<std::string>& args) { return cli::run_cli(args); },
      py::arg("args"), "run the mattekit command line in-process; returns the exit code");
}
