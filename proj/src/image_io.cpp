#include "swipe/image_io.hpp"

#include "swipe/errors.hpp"

#include <png.h>
// jpeglib.h expects FILE and size_t to be declared first.
#include <cstdio>
#include <jpeglib.h>

#include <csetjmp>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace swipe {

namespace {

ColorImage from_interleaved(const std::vector<unsigned char>& data, int width, int height,
                            int components) {
  ColorImage img;
  for (auto& ch : img.channels) ch.resize(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const unsigned char* px = &data[(static_cast<std::size_t>(y) * width + x) * components];
      for (int c = 0; c < 3; ++c) {
        img.channels[c](y, x) = px[components == 1 ? 0 : c] / 255.0f;
      }
    }
  }
  return img;
}

ColorImage load_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError("cannot decode PNG '" + path.string() + "': " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot decode PNG '" + path.string() + "': " + msg);
  }
  return from_interleaved(buffer, static_cast<int>(image.width), static_cast<int>(image.height), 3);
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

ColorImage load_jpeg(const std::filesystem::path& path) {
  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!file) throw IoError("cannot open '" + path.string() + "'");

  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  std::vector<unsigned char> buffer;
  int width = 0;
  int height = 0;
  int components = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw IoError("cannot decode JPEG '" + path.string() + "': " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);
  width = static_cast<int>(cinfo.output_width);
  height = static_cast<int>(cinfo.output_height);
  components = cinfo.output_components;
  buffer.resize(static_cast<std::size_t>(width) * height * components);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = &buffer[static_cast<std::size_t>(cinfo.output_scanline) * width * components];
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return from_interleaved(buffer, width, height, components);
}

unsigned char to_byte(float v) {
  return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
}

void write_png(const std::filesystem::path& path, const std::vector<unsigned char>& data, int width,
               int height, bool color) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, data.data(), 0, nullptr)) {
    throw IoError("cannot write PNG '" + path.string() + "': " + image.message);
  }
}

}  // namespace

ColorImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  unsigned char sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), sizeof(sig));
  if (in.gcount() >= 8 && png_sig_cmp(sig, 0, 8) == 0) return load_png(path);
  if (in.gcount() >= 3 && sig[0] == 0xFF && sig[1] == 0xD8 && sig[2] == 0xFF) return load_jpeg(path);
  throw IoError("unsupported image format '" + path.string() + "'");
}

Image to_grayscale(const ColorImage& img) {
  const Image gray = 0.299f * img.channels[0] + 0.587f * img.channels[1] + 0.114f * img.channels[2];
  return gray.max(0.0f).min(1.0f);
}

void save_png(const std::filesystem::path& path, const Image& gray) {
  std::vector<unsigned char> data(static_cast<std::size_t>(gray.size()));
  for (Eigen::Index i = 0; i < gray.size(); ++i) data[i] = to_byte(gray.data()[i]);
  write_png(path, data, static_cast<int>(gray.cols()), static_cast<int>(gray.rows()), false);
}

void save_png(const std::filesystem::path& path, const ColorImage& rgb) {
  const int w = rgb.width();
  const int h = rgb.height();
  std::vector<unsigned char> data(static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        data[(static_cast<std::size_t>(y) * w + x) * 3 + c] = to_byte(rgb.channels[c](y, x));
      }
    }
  }
  write_png(path, data, w, h, true);
}

}  // namespace swipe
