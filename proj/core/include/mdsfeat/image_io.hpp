#pragma once

#include "mdsfeat/gray_image.hpp"

#include <filesystem>

namespace mdsfeat {

/// Reads a PGM (binary P5 or ASCII P2) or PNG file into intensities scaled
/// to [0, 1]. RGB PNGs convert through luma 0.299 R + 0.587 G + 0.114 B.
/// Throws DataError naming the file on any problem.
GrayImage read_image(const std::filesystem::path& path);

bool is_supported_image(const std::filesystem::path& path);

/// Binary P5 writer, 8-bit, intensities clamped to [0, 1].
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

} // namespace mdsfeat
