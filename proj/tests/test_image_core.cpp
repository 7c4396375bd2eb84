#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "nirfuse/image.hpp"
#include "nirfuse/image_io.hpp"
#include "test_util.hpp"

using namespace nirfuse;

namespace {

std::string temp_png(const char* tag) {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path();
    return (dir / (std::string("nirfuse_test_") + tag + "_" + std::to_string(counter++) + ".png")).string();
}

struct FileGuard {
    std::string path;
    ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("quantization is round-half-up with clamping") {
    CHECK(quantize_unit(0.5, 255) == 128);  // round(127.5) half-up
    CHECK(quantize_unit(1.2, 255) == 255);
    CHECK(quantize_unit(-0.1, 255) == 0);
    CHECK(quantize_unit(1.0, 255) == 255);
    CHECK(quantize_unit(0.0, 255) == 0);
    CHECK(quantize_unit(0.5, 65535) == 32768);
}

TEST_CASE("8-bit scale endpoints load as 0 and 1") {
    ImagePlane p(3, 2);
    p.at(0, 0) = 1.0;   // stored 255
    p.at(1, 0) = 0.0;   // stored 0
    p.at(2, 0) = 0.25;
    FileGuard f{temp_png("gray8")};
    save_image(p, f.path, 8);
    const ImagePlane back = load_plane(f.path);
    CHECK(back.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(back.at(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("16-bit gray pixel 32768 loads as 32768/65535") {
    ImagePlane p(2, 2, 0.5);
    FileGuard f{temp_png("gray16")};
    save_image(p, f.path, 16);
    const ImagePlane back = load_plane(f.path);
    const double expected = 32768.0 / 65535.0;  // direct division oracle
    CHECK(back.at(0, 0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("save/load round trip stays within half a quantization step") {
    std::mt19937 rng(901);
    const ImagePlane p = testutil::random_plane(17, 13, rng);
    for (int depth : {8, 16}) {
        FileGuard f{temp_png("roundtrip")};
        save_image(p, f.path, depth);
        const ImagePlane back = load_plane(f.path);
        const double bound = 0.5 / (depth == 8 ? 255.0 : 65535.0) + 1e-12;
        CHECK(testutil::max_abs_diff(p, back) <= bound);
    }
}

TEST_CASE("rgb save/load round trip, 16-bit") {
    std::mt19937 rng(902);
    const RgbImage img = testutil::random_rgb(9, 11, rng);
    FileGuard f{temp_png("rgb16")};
    save_image(img, f.path, 16);
    const RgbImage back = load_rgb(f.path);
    CHECK(testutil::max_abs_diff(img, back) <= 0.5 / 65535.0 + 1e-12);
}

TEST_CASE("gray file loads as plane, rgb file as image") {
    FileGuard fg{temp_png("variant_g")}, fc{temp_png("variant_c")};
    save_image(ImagePlane(4, 4, 0.3), fg.path, 8);
    save_image(RgbImage(4, 4, 0.3), fc.path, 8);
    CHECK(std::holds_alternative<ImagePlane>(load_image(fg.path)));
    CHECK(std::holds_alternative<RgbImage>(load_image(fc.path)));
    CHECK_THROWS_AS(load_plane(fc.path), InputError);
    const RgbImage promoted = load_rgb(fg.path);  // gray replicated
    CHECK(promoted.r.at(0, 0) == promoted.b.at(0, 0));
}

TEST_CASE("io errors") {
    CHECK_THROWS_AS(load_image("/nonexistent/nowhere.png"), IoError);
    CHECK_THROWS_AS(save_image(ImagePlane(2, 2), "/nonexistent/dir/out.png"), IoError);
    CHECK_THROWS_AS(save_image(ImagePlane(2, 2), temp_png("depth"), 12), ParamError);

    FileGuard f{temp_png("notpng")};
    std::FILE* fp = std::fopen(f.path.c_str(), "wb");
    std::fputs("definitely not a png", fp);
    std::fclose(fp);
    CHECK_THROWS_AS(load_image(f.path), FormatError);
}

TEST_CASE("clamp_plane examples and idempotence") {
    ImagePlane p(3, 1);
    p.at(0, 0) = -0.2;
    p.at(1, 0) = 0.5;
    p.at(2, 0) = 1.3;
    const ImagePlane c = clamp_plane(p, 0.0, 1.0);
    CHECK(c.at(0, 0) == 0.0);
    CHECK(c.at(1, 0) == 0.5);
    CHECK(c.at(2, 0) == 1.0);

    const ImagePlane cc = clamp_plane(c, 0.0, 1.0);
    CHECK(testutil::max_abs_diff(c, cc) == 0.0);

    std::mt19937 rng(903);
    const ImagePlane inrange = testutil::random_plane(8, 8, rng, 0.1, 0.9);
    CHECK(testutil::max_abs_diff(inrange, clamp_plane(inrange, 0.0, 1.0)) == 0.0);

    const ImagePlane zero = clamp_plane(inrange, 0.0, 0.0);
    CHECK(plane_max(zero) == 0.0);
    CHECK(plane_min(zero) == 0.0);

    CHECK_THROWS_AS(clamp_plane(p, 1.0, 0.0), ParamError);
}
