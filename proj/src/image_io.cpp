#include "nirfuse/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace nirfuse {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReadCtx {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadCtx() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriteCtx {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriteCtx() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

}  // namespace

unsigned quantize_unit(double v, unsigned max_value) {
    if (!(v > 0.0)) v = 0.0;  // also catches NaN
    if (v > 1.0) v = 1.0;
    double q = std::floor(v * static_cast<double>(max_value) + 0.5);
    if (q > static_cast<double>(max_value)) q = static_cast<double>(max_value);
    return static_cast<unsigned>(q);
}

LoadedImage load_image(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open for reading: " + path);

    unsigned char sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw FormatError("not a PNG file: " + path);

    PngReadCtx ctx;
    ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!ctx.png) throw IoError("png_create_read_struct failed");
    ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.info) throw IoError("png_create_info_struct failed");

    if (setjmp(png_jmpbuf(ctx.png)))
        throw FormatError("corrupt PNG: " + path);

    png_init_io(ctx.png, fp.get());
    png_set_sig_bytes(ctx.png, 8);
    png_read_info(ctx.png, ctx.info);

    png_uint_32 w = 0, h = 0;
    int bit_depth = 0, color_type = 0;
    png_get_IHDR(ctx.png, ctx.info, &w, &h, &bit_depth, &color_type, nullptr, nullptr, nullptr);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(ctx.png);
    if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(ctx.png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(ctx.png);
    png_read_update_info(ctx.png, ctx.info);

    bit_depth = png_get_bit_depth(ctx.png, ctx.info);
    const int channels = png_get_channels(ctx.png, ctx.info);
    if (channels != 1 && channels != 3)
        throw FormatError("unsupported channel count after decode: " + path);
    if (bit_depth != 8 && bit_depth != 16)
        throw FormatError("unsupported bit depth (want 8 or 16): " + path);

    const std::size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
    std::vector<unsigned char> buf(rowbytes * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = buf.data() + y * rowbytes;
    png_read_image(ctx.png, rows.data());
    png_read_end(ctx.png, nullptr);

    const double maxv = bit_depth == 8 ? 255.0 : 65535.0;
    auto sample = [&](const unsigned char* p, int i) -> double {
        if (bit_depth == 8) return p[i] / maxv;
        // PNG stores 16-bit samples big-endian
        return ((p[2 * i] << 8) | p[2 * i + 1]) / maxv;
    };

    if (channels == 1) {
        ImagePlane plane(static_cast<int>(w), static_cast<int>(h));
        for (png_uint_32 y = 0; y < h; ++y) {
            const unsigned char* row = rows[y];
            for (png_uint_32 x = 0; x < w; ++x)
                plane.at(static_cast<int>(x), static_cast<int>(y)) = sample(row, static_cast<int>(x));
        }
        return plane;
    }
    RgbImage img(static_cast<int>(w), static_cast<int>(h));
    for (png_uint_32 y = 0; y < h; ++y) {
        const unsigned char* row = rows[y];
        for (png_uint_32 x = 0; x < w; ++x) {
            img.r.at(static_cast<int>(x), static_cast<int>(y)) = sample(row, 3 * static_cast<int>(x));
            img.g.at(static_cast<int>(x), static_cast<int>(y)) = sample(row, 3 * static_cast<int>(x) + 1);
            img.b.at(static_cast<int>(x), static_cast<int>(y)) = sample(row, 3 * static_cast<int>(x) + 2);
        }
    }
    return img;
}

ImagePlane load_plane(const std::string& path) {
    LoadedImage img = load_image(path);
    if (std::holds_alternative<RgbImage>(img))
        throw InputError("expected a grayscale image: " + path);
    return std::get<ImagePlane>(std::move(img));
}

RgbImage load_rgb(const std::string& path) {
    LoadedImage img = load_image(path);
    if (std::holds_alternative<ImagePlane>(img))
        return gray_to_rgb(std::get<ImagePlane>(img));
    return std::get<RgbImage>(std::move(img));
}

namespace {

void save_png(const std::string& path, int width, int height, int bit_depth,
              const std::vector<const ImagePlane*>& planes) {
    if (bit_depth != 8 && bit_depth != 16)
        throw ParamError("save_image: bit depth must be 8 or 16");
    for (const ImagePlane* p : planes)
        if (!plane_finite(*p)) throw InputError("save_image: non-finite pixel values");

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot open for writing: " + path);

    PngWriteCtx ctx;
    ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!ctx.png) throw IoError("png_create_write_struct failed");
    ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.info) throw IoError("png_create_info_struct failed");

    const int channels = static_cast<int>(planes.size());
    const unsigned maxv = bit_depth == 8 ? 255u : 65535u;
    const std::size_t bytes_per_sample = bit_depth == 8 ? 1 : 2;
    std::vector<unsigned char> buf(static_cast<std::size_t>(width) * height * channels * bytes_per_sample);

    std::size_t k = 0;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            for (int c = 0; c < channels; ++c) {
                unsigned q = quantize_unit(planes[c]->at(x, y), maxv);
                if (bit_depth == 8) {
                    buf[k++] = static_cast<unsigned char>(q);
                } else {
                    buf[k++] = static_cast<unsigned char>(q >> 8);
                    buf[k++] = static_cast<unsigned char>(q & 0xff);
                }
            }
        }
    }

    if (setjmp(png_jmpbuf(ctx.png)))
        throw IoError("PNG write failed: " + path);

    png_init_io(ctx.png, fp.get());
    png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 bit_depth, channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);

    const std::size_t rowbytes = static_cast<std::size_t>(width) * channels * bytes_per_sample;
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y) rows[y] = buf.data() + y * rowbytes;
    png_write_image(ctx.png, rows.data());
    png_write_end(ctx.png, nullptr);
}

}  // namespace

void save_image(const ImagePlane& img, const std::string& path, int bit_depth) {
    save_png(path, img.width, img.height, bit_depth, {&img});
}

void save_image(const RgbImage& img, const std::string& path, int bit_depth) {
    save_png(path, img.width, img.height, bit_depth, {&img.r, &img.g, &img.b});
}

}  // namespace nirfuse
