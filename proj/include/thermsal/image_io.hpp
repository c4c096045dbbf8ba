#pragma once

#include <jpeglib.h>
#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <variant>
#include <vector>

#include "thermsal/errors.hpp"
#include "thermsal/image.hpp"

namespace thermsal {

using LoadedImage = std::variant<GrayImage, RgbImage>;

namespace detail {

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());
  return bytes;
}

struct MemCursor {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos;
};

inline void png_mem_read(png_structp png, png_bytep out, png_size_t n) {
  auto* cur = static_cast<MemCursor*>(png_get_io_ptr(png));
  if (cur->pos + n > cur->size) png_error(png, "unexpected end of stream");
  std::memcpy(out, cur->data + cur->pos, n);
  cur->pos += n;
}

inline void png_mem_write(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + n);
}

inline void png_mem_flush(png_structp) {}

// Buffers live in the caller frame so nothing mutated between setjmp and a
// libpng longjmp is destroyed with indeterminate state.
struct DecodeBuffers {
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
  int width = 0;
  int height = 0;
  int channels = 0;
};

inline bool png_decode(const std::uint8_t* bytes, std::size_t size, DecodeBuffers* buf,
                       std::string* err) {
  MemCursor cur{bytes, size, 0};
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) {
    *err = "libpng allocation failure";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    *err = "libpng allocation failure";
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    *err = "invalid or truncated PNG stream";
    return false;
  }
  png_set_read_fn(png, &cur, &png_mem_read);
  png_read_info(png, info);

  // Normalize everything to 8-bit gray or RGB.
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_scale_16(png);
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  buf->width = static_cast<int>(png_get_image_width(png, info));
  buf->height = static_cast<int>(png_get_image_height(png, info));
  buf->channels = png_get_channels(png, info);
  if (buf->channels != 1 && buf->channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    *err = "unsupported PNG channel count";
    return false;
  }
  std::size_t rowbytes = png_get_rowbytes(png, info);
  buf->pixels.resize(rowbytes * buf->height);
  buf->rows.resize(buf->height);
  for (int y = 0; y < buf->height; ++y) buf->rows[y] = buf->pixels.data() + rowbytes * y;

  png_read_image(png, buf->rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

inline bool png_encode(const std::uint8_t* interleaved, int width, int height, int channels,
                       std::vector<std::uint8_t>* out, std::vector<png_bytep>* rows,
                       std::string* err) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) {
    *err = "libpng allocation failure";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    *err = "libpng allocation failure";
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    *err = "PNG encode failure";
    return false;
  }
  png_set_write_fn(png, out, &png_mem_write, &png_mem_flush);
  png_set_IHDR(png, info, width, height, 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::size_t rowbytes = static_cast<std::size_t>(width) * channels;
  rows->resize(height);
  for (int y = 0; y < height; ++y)
    (*rows)[y] = const_cast<png_bytep>(interleaved + rowbytes * y);
  png_write_image(png, rows->data());
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
  return true;
}

struct JpegErrorJump {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

inline void jpeg_error_exit(j_common_ptr cinfo) {
  auto* e = reinterpret_cast<JpegErrorJump*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, e->message);
  std::longjmp(e->jump, 1);
}

inline bool jpeg_decode(const std::uint8_t* bytes, std::size_t size, DecodeBuffers* buf,
                        std::string* err) {
  jpeg_decompress_struct cinfo;
  JpegErrorJump jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = &jpeg_error_exit;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    *err = std::string("invalid JPEG stream: ") + jerr.message;
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, const_cast<unsigned char*>(bytes), static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);

  buf->width = static_cast<int>(cinfo.output_width);
  buf->height = static_cast<int>(cinfo.output_height);
  buf->channels = cinfo.output_components;
  std::size_t rowbytes = static_cast<std::size_t>(buf->width) * buf->channels;
  buf->pixels.resize(rowbytes * buf->height);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = buf->pixels.data() + rowbytes * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

inline LoadedImage from_interleaved(const DecodeBuffers& buf) {
  if (buf.channels == 1) {
    GrayImage img(buf.width, buf.height);
    std::copy_n(buf.pixels.begin(), img.pixel_count(), img.data.begin());
    return img;
  }
  RgbImage img(buf.width, buf.height);
  std::size_t n = img.planes[0].pixel_count();
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < 3; ++c) img.planes[c].data[i] = buf.pixels[i * 3 + c];
  return img;
}

inline bool has_png_signature(const std::vector<std::uint8_t>& bytes) {
  static const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  return bytes.size() >= 8 && std::memcmp(bytes.data(), sig, 8) == 0;
}

inline bool has_jpeg_signature(const std::vector<std::uint8_t>& bytes) {
  return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

inline void write_file_bytes(const std::filesystem::path& path,
                             const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace detail

inline LoadedImage load_image(const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes = detail::read_file_bytes(path);
  detail::DecodeBuffers buf;
  std::string err;
  bool ok;
  if (detail::has_png_signature(bytes)) {
    ok = detail::png_decode(bytes.data(), bytes.size(), &buf, &err);
  } else if (detail::has_jpeg_signature(bytes)) {
    ok = detail::jpeg_decode(bytes.data(), bytes.size(), &buf, &err);
  } else {
    throw FormatError(path.string() + ": not a PNG or JPEG file");
  }
  if (!ok) throw FormatError(path.string() + ": " + err);
  return detail::from_interleaved(buf);
}

inline GrayImage load_gray(const std::filesystem::path& path) {
  LoadedImage img = load_image(path);
  if (auto* g = std::get_if<GrayImage>(&img)) return std::move(*g);
  return luminance(std::get<RgbImage>(img));
}

inline void save_image(const GrayImage& img, const std::filesystem::path& path) {
  std::vector<std::uint8_t> encoded;
  std::vector<png_bytep> rows;
  std::string err;
  if (!detail::png_encode(img.data.data(), img.width, img.height, 1, &encoded, &rows, &err))
    throw Error(err);
  detail::write_file_bytes(path, encoded);
}

inline void save_image(const RgbImage& img, const std::filesystem::path& path) {
  std::size_t n = img.planes[0].pixel_count();
  std::vector<std::uint8_t> interleaved(n * 3);
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < 3; ++c) interleaved[i * 3 + c] = img.planes[c].data[i];
  std::vector<std::uint8_t> encoded;
  std::vector<png_bytep> rows;
  std::string err;
  if (!detail::png_encode(interleaved.data(), img.width(), img.height(), 3, &encoded, &rows, &err))
    throw Error(err);
  detail::write_file_bytes(path, encoded);
}

}  // namespace thermsal
