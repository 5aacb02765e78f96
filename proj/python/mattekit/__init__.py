"""mattekit: batch toolkit for alpha-matting corpora.

Compositing, harmonization, coarse-to-fine fusion, matting losses, the four
standard error metrics, and forward-pass reference network blocks, all backed
by the C++ core.
"""

from mattekit._core import (  # noqa: F401
    MatteError,
    bce,
    binarize_alpha,
    coarse_loss,
    composite,
    composition_loss,
    conn_error,
    conv2d,
    evaluate_corpus,
    f_quant,
    fuse,
    gcf,
    grad_error,
    harmonize,
    head_attention,
    ia_fuse,
    l1_loss,
    laplacian_loss,
    make_trimap,
    masked_stats,
    mse,
    read_image,
    read_matte,
    refine_loss,
    resize_bilinear,
    run_cli,
    sad,
    write_image,
    write_matte,
)

__all__ = [
    "MatteError",
    "bce",
    "binarize_alpha",
    "coarse_loss",
    "composite",
    "composition_loss",
    "conn_error",
    "conv2d",
    "evaluate_corpus",
    "f_quant",
    "fuse",
    "gcf",
    "grad_error",
    "harmonize",
    "head_attention",
    "ia_fuse",
    "l1_loss",
    "laplacian_loss",
    "make_trimap",
    "masked_stats",
    "mse",
    "read_image",
    "read_matte",
    "refine_loss",
    "resize_bilinear",
    "run_cli",
    "sad",
    "write_image",
    "write_matte",
]

__version__ = "0.1.0"
