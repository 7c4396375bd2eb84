#include "dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace nirfuse {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

ComplexGrid dft2(const ImagePlane& p) {
    const int w = p.width, h = p.height;
    ComplexGrid in(p.size()), out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) in[i] = p.data[i];

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(h, w, reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

ImagePlane idft2_real(const ComplexGrid& g, int width, int height) {
    ComplexGrid in = g, out(g.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(height, width, reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    ImagePlane res(width, height);
    const double norm = 1.0 / (static_cast<double>(width) * height);
    for (std::size_t i = 0; i < res.size(); ++i) res.data[i] = out[i].real() * norm;
    return res;
}

ComplexGrid derivative_multiplier(int width, int height, bool horizontal) {
    ComplexGrid g(static_cast<std::size_t>(width) * height);
    const double two_pi = 2.0 * M_PI;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double phase = horizontal ? two_pi * x / width : two_pi * y / height;
            g[static_cast<std::size_t>(y) * width + x] =
                std::complex<double>(std::cos(phase) - 1.0, std::sin(phase));
        }
    }
    return g;
}

}  // namespace nirfuse
