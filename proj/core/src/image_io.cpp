#include "mdsfeat/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& why) {
  throw DataError("read_image: " + path.string() + ": " + why);
}

// next whitespace-separated token, skipping '#' comment lines
std::string next_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

std::size_t parse_count(std::istream& in, const std::filesystem::path& path, const char* what) {
  const std::string tok = next_token(in);
  try {
    const long long v = std::stoll(tok);
    if (v <= 0) throw std::out_of_range("nonpositive");
    return static_cast<std::size_t>(v);
  } catch (...) {
    fail(path, std::string("bad ") + what + " field '" + tok + "'");
  }
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");
  const std::string magic = next_token(in);
  if (magic != "P5" && magic != "P2") fail(path, "not a PGM file (magic '" + magic + "')");
  const std::size_t width = parse_count(in, path, "width");
  const std::size_t height = parse_count(in, path, "height");
  const std::size_t maxval = parse_count(in, path, "maxval");
  if (maxval == 0 || maxval > 65535) fail(path, "unsupported maxval");

  GrayImage img(height, width);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (magic == "P2") {
    for (auto& px : img.pixels) {
      const std::string tok = next_token(in);
      if (tok.empty()) fail(path, "truncated ASCII data");
      px = scale * std::stod(tok);
    }
  } else {
    // next_token already consumed the single whitespace after maxval
    const bool two_bytes = maxval > 255;
    std::vector<unsigned char> raw(img.pixel_count() * (two_bytes ? 2 : 1));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) fail(path, "truncated binary data");
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
      const unsigned v = two_bytes ? (raw[2 * i] << 8 | raw[2 * i + 1]) : raw[i];
      img.pixels[i] = scale * static_cast<double>(v);
    }
  }
  return img;
}

GrayImage read_png(const std::filesystem::path& path) {
  std::FILE* fp = std::fopen(path.string().c_str(), "rb");
  if (!fp) fail(path, "cannot open");
  auto closer = std::unique_ptr<std::FILE, int (*)(std::FILE*)>(fp, &std::fclose);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "libpng init failed");
  }
  std::vector<png_bytep> row_ptrs;
  std::vector<unsigned char> buffer;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "corrupt PNG");
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const png_byte color = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);

  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const std::size_t rowbytes = png_get_rowbytes(png, info);
  buffer.resize(rowbytes * height);
  row_ptrs.resize(height);
  for (png_uint_32 r = 0; r < height; ++r) row_ptrs[r] = buffer.data() + r * rowbytes;
  png_read_image(png, row_ptrs.data());
  const png_byte channels = png_get_channels(png, info);
  png_destroy_read_struct(&png, &info, nullptr);

  GrayImage img(height, width);
  for (std::size_t r = 0; r < height; ++r) {
    const unsigned char* row = buffer.data() + r * rowbytes;
    for (std::size_t c = 0; c < width; ++c) {
      double v = 0.0;
      if (channels >= 3) {
        v = (0.299 * row[c * channels] + 0.587 * row[c * channels + 1] +
             0.114 * row[c * channels + 2]) / 255.0;
      } else {
        v = row[c * channels] / 255.0;
      }
      img.at(r, c) = v;
    }
  }
  return img;
}

} // namespace

bool is_supported_image(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".png";
}

GrayImage read_image(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".pgm") return read_pgm(path);
  if (ext == ".png") return read_png(path);
  fail(path, "unsupported format (expected .pgm or .png)");
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("write_pgm: cannot open " + path.string());
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  for (double v : img.pixels) {
    const double clamped = std::min(std::max(v, 0.0), 1.0);
    out.put(static_cast<char>(static_cast<unsigned char>(clamped * 255.0 + 0.5)));
  }
  if (!out) throw DataError("write_pgm: write failed for " + path.string());
}

} // namespace mdsfeat
