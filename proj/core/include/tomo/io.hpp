#pragma once

#include <filesystem>
#include <string>

#include "tomo/tensor_transforms.hpp"

namespace tomo {

/// STTF field container: "STTF" | u16 version | u16 n | u16 m | u16 reserved
/// | u32 count per axis | f64 spacing per axis | f64 origin per axis |
/// payload f64 (component-major, nodes row-major) | u32 CRC32 of payload.
/// All little-endian.
void write_sttf(const std::filesystem::path& path, const TensorField& field);
TensorField read_sttf(const std::filesystem::path& path);

/// SGRM sinogram container: "SGRM" | u16 version | u16 n | u8 family |
/// u8 order | u8 x (n-1) multi-index | u32 direction count | f64 x n per
/// direction | u32 p count | f64 p min | f64 p max | payload f64
/// (direction-major) | u32 CRC32 of payload.
struct SgrmRecord {
  TransformFamily family = TransformFamily::trt;
  int order = 0;
  MultiIndex ell;
  Sinogram sinogram;
};

void write_sgrm(const std::filesystem::path& path, const SgrmRecord& record);
SgrmRecord read_sgrm(const std::filesystem::path& path);

/// 8-bit PGM preview, linearly mapped to [min, max].
void write_pgm(const std::filesystem::path& path, std::span<const double> data,
               int rows, int cols);

/// Whole-file text write via temp-and-rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// Canonical file name for one dataset record, e.g. "lrt_k0_l2.sgrm".
std::string sgrm_file_name(TransformFamily family, int order, const MultiIndex& ell);

}  // namespace tomo
