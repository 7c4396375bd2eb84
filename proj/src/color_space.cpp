#include "nirfuse/color_space.hpp"

#include <array>
#include <cmath>

namespace nirfuse {

namespace {

// RGB -> LMS cone matrix after normalizing each published row to unit
// sum, so equal RGB maps to equal LMS and lands exactly on the
// achromatic axis.
constexpr double kRawLms[3][3] = {
    {0.3811, 0.5783, 0.0402},
    {0.1967, 0.7244, 0.0782},
    {0.0241, 0.1288, 0.8444},
};

struct Matrices {
    double rgb2lms[3][3];
    double lms2rgb[3][3];
};

Matrices make_matrices() {
    Matrices m{};
    for (int i = 0; i < 3; ++i) {
        double s = kRawLms[i][0] + kRawLms[i][1] + kRawLms[i][2];
        for (int j = 0; j < 3; ++j) m.rgb2lms[i][j] = kRawLms[i][j] / s;
    }
    // exact 3x3 inverse of the normalized forward matrix
    const auto& a = m.rgb2lms;
    double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                 a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                 a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    m.lms2rgb[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
    m.lms2rgb[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
    m.lms2rgb[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
    m.lms2rgb[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det;
    m.lms2rgb[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
    m.lms2rgb[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
    m.lms2rgb[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det;
    m.lms2rgb[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det;
    m.lms2rgb[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
    return m;
}

const Matrices& mats() {
    static const Matrices m = make_matrices();
    return m;
}

const double kSqrt3 = std::sqrt(3.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
const double kInvSqrt6 = 1.0 / std::sqrt(6.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline void opponent_of_loglms(double L, double M, double S,
                               double& l, double& c1, double& c2) {
    l = kInvSqrt3 * (L + M + S);
    c1 = kInvSqrt6 * (L + M - 2.0 * S);
    c2 = kInvSqrt2 * (L - M);
}

// The opponent transform is orthogonal; its inverse is the transpose.
inline void loglms_of_opponent(double l, double c1, double c2,
                               double& L, double& M, double& S) {
    L = kInvSqrt3 * l + kInvSqrt6 * c1 + kInvSqrt2 * c2;
    M = kInvSqrt3 * l + kInvSqrt6 * c1 - kInvSqrt2 * c2;
    S = kInvSqrt3 * l - 2.0 * kInvSqrt6 * c1;
}

}  // namespace

OpponentImage::OpponentImage(ImagePlane lum, ImagePlane ca, ImagePlane cb)
    : l(std::move(lum)), c1(std::move(ca)), c2(std::move(cb)) {
    if (!l.same_dims(c1) || !l.same_dims(c2))
        throw InputError("opponent planes must share dimensions");
}

OpponentImage forward_opponent(const RgbImage& img) {
    const auto& m = mats().rgb2lms;
    ImagePlane l(img.width, img.height), c1(img.width, img.height), c2(img.width, img.height);
    for (std::size_t i = 0; i < img.r.data.size(); ++i) {
        const double r = img.r.data[i], g = img.g.data[i], b = img.b.data[i];
        double L = m[0][0] * r + m[0][1] * g + m[0][2] * b;
        double M = m[1][0] * r + m[1][1] * g + m[1][2] * b;
        double S = m[2][0] * r + m[2][1] * g + m[2][2] * b;
        L = std::log10(std::max(L, kLmsFloor));
        M = std::log10(std::max(M, kLmsFloor));
        S = std::log10(std::max(S, kLmsFloor));
        opponent_of_loglms(L, M, S, l.data[i], c1.data[i], c2.data[i]);
    }
    return OpponentImage(std::move(l), std::move(c1), std::move(c2));
}

RgbImage backward_opponent(const OpponentImage& opp) {
    const auto& m = mats().lms2rgb;
    RgbImage out(opp.width(), opp.height());
    for (std::size_t i = 0; i < opp.l.data.size(); ++i) {
        double L, M, S;
        loglms_of_opponent(opp.l.data[i], opp.c1.data[i], opp.c2.data[i], L, M, S);
        L = std::pow(10.0, L);
        M = std::pow(10.0, M);
        S = std::pow(10.0, S);
        double r = m[0][0] * L + m[0][1] * M + m[0][2] * S;
        double g = m[1][0] * L + m[1][1] * M + m[1][2] * S;
        double b = m[2][0] * L + m[2][1] * M + m[2][2] * S;
        out.r.data[i] = std::min(1.0, std::max(0.0, r));
        out.g.data[i] = std::min(1.0, std::max(0.0, g));
        out.b.data[i] = std::min(1.0, std::max(0.0, b));
    }
    return out;
}

ImagePlane luminance_of(const RgbImage& img) {
    const auto& m = mats().rgb2lms;
    ImagePlane l(img.width, img.height);
    for (std::size_t i = 0; i < img.r.data.size(); ++i) {
        const double r = img.r.data[i], g = img.g.data[i], b = img.b.data[i];
        double L = std::log10(std::max(m[0][0] * r + m[0][1] * g + m[0][2] * b, kLmsFloor));
        double M = std::log10(std::max(m[1][0] * r + m[1][1] * g + m[1][2] * b, kLmsFloor));
        double S = std::log10(std::max(m[2][0] * r + m[2][1] * g + m[2][2] * b, kLmsFloor));
        l.data[i] = kInvSqrt3 * (L + M + S);
    }
    return l;
}

double luminance_to_gray(double l) { return std::pow(10.0, l / kSqrt3); }

double gray_to_luminance(double g) {
    return kSqrt3 * std::log10(std::max(g, kLmsFloor));
}

ImagePlane luminance_to_gray(const ImagePlane& l) {
    ImagePlane out = l;
    for (double& v : out.data) v = luminance_to_gray(v);
    return out;
}

ImagePlane gray_to_luminance(const ImagePlane& g) {
    ImagePlane out = g;
    for (double& v : out.data) v = gray_to_luminance(v);
    return out;
}

}  // namespace nirfuse
