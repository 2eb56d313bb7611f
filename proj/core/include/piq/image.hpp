#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace piq {

// Decoded 8-bit RGB raster, rows top to bottom.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 * width * height bytes

  std::uint8_t* pixel(int x, int y) { return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
  const std::uint8_t* pixel(int x, int y) const {
    return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
};

// PNG or JPEG, dispatched on magic bytes. Throws ImageDecodeError.
Raster decode_image(const std::string& path);

// Lossless PNG encode; compression_level in [0, 9].
void write_png(const std::string& path, const Raster& image, int compression_level = 6);

}  // namespace piq
