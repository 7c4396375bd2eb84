#include "nirfuse/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "dft.hpp"
#include "nirfuse/color_space.hpp"
#include "nirfuse/detail_transfer.hpp"
#include "nirfuse/patch.hpp"

namespace nirfuse {

RgbImage naive_colorize(const ImagePlane& nir, const RgbImage& vis) {
    if (nir.width != vis.width || nir.height != vis.height)
        throw InputError("naive_colorize: dimension mismatch");
    OpponentImage opp = forward_opponent(vis);
    return backward_opponent(OpponentImage(gray_to_luminance(nir),
                                           std::move(opp.c1), std::move(opp.c2)));
}

namespace {

// adjoint of the periodic forward difference
ImagePlane gradient_adjoint(const ImagePlane& t, Axis axis) {
    const int w = t.width, h = t.height;
    ImagePlane out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double prev = axis == Axis::Horizontal
                                    ? t.at((x + w - 1) % w, y)
                                    : t.at(x, (y + h - 1) % h);
            out.at(x, y) = prev - t.at(x, y);
        }
    return out;
}

struct IrlsWeights {
    ImagePlane wh, wv;
};

// A(x) = mu_g x + sum_j grad_j^T (w_j . grad_j x)
ImagePlane irls_apply(const ImagePlane& x, double mu_g, const IrlsWeights& w) {
    ImagePlane gh = gradient(x, Axis::Horizontal);
    ImagePlane gv = gradient(x, Axis::Vertical);
    for (std::size_t i = 0; i < gh.data.size(); ++i) {
        gh.data[i] *= w.wh.data[i];
        gv.data[i] *= w.wv.data[i];
    }
    ImagePlane out = gradient_adjoint(gh, Axis::Horizontal);
    const ImagePlane av = gradient_adjoint(gv, Axis::Vertical);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] += av.data[i] + mu_g * x.data[i];
    return out;
}

double dot(const ImagePlane& a, const ImagePlane& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

// circulant preconditioner built from the mean weight
struct FftPrecond {
    std::vector<double> inv_diag;
    int w = 0, h = 0;

    FftPrecond(int width, int height, double mu_g, double mean_w) : w(width), h(height) {
        const ComplexGrid fx = derivative_multiplier(w, h, true);
        const ComplexGrid fy = derivative_multiplier(w, h, false);
        inv_diag.resize(fx.size());
        for (std::size_t i = 0; i < fx.size(); ++i)
            inv_diag[i] = 1.0 / (mu_g + mean_w * (std::norm(fx[i]) + std::norm(fy[i])));
    }

    ImagePlane apply(const ImagePlane& r) const {
        ComplexGrid rh = dft2(r);
        for (std::size_t i = 0; i < rh.size(); ++i) rh[i] *= inv_diag[i];
        return idft2_real(rh, w, h);
    }
};

ImagePlane solve_irls_quadratic(const ImagePlane& rhs, double mu_g,
                                const IrlsWeights& w, const ImagePlane& init) {
    double mean_w = 0.0;
    for (std::size_t i = 0; i < w.wh.data.size(); ++i)
        mean_w += w.wh.data[i] + w.wv.data[i];
    mean_w /= 2.0 * static_cast<double>(w.wh.data.size());
    const FftPrecond pre(rhs.width, rhs.height, mu_g, mean_w);

    ImagePlane x = init;
    ImagePlane r = rhs;
    {
        const ImagePlane ax = irls_apply(x, mu_g, w);
        for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] -= ax.data[i];
    }
    ImagePlane z = pre.apply(r);
    ImagePlane p = z;
    double rz = dot(r, z);
    const double rhs_norm = std::sqrt(dot(rhs, rhs));
    const double tol = 1e-10 * std::max(rhs_norm, 1e-30);

    for (int it = 0; it < 400; ++it) {
        if (std::sqrt(dot(r, r)) <= tol) break;
        const ImagePlane ap = irls_apply(p, mu_g, w);
        const double alpha = rz / dot(p, ap);
        for (std::size_t i = 0; i < x.data.size(); ++i) {
            x.data[i] += alpha * p.data[i];
            r.data[i] -= alpha * ap.data[i];
        }
        z = pre.apply(r);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < p.data.size(); ++i)
            p.data[i] = z.data[i] + beta * p.data[i];
    }
    return x;
}

}  // namespace

double gradient_reg_objective(const ImagePlane& x, const ImagePlane& vis_l,
                              const ImagePlane& nir, double mu_g, double gamma) {
    double quad = 0.0;
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        const double d = x.data[i] - vis_l.data[i];
        quad += d * d;
    }
    double reg = 0.0;
    for (Axis axis : {Axis::Horizontal, Axis::Vertical}) {
        const ImagePlane gx = gradient(x, axis);
        const ImagePlane gn = gradient(nir, axis);
        for (std::size_t i = 0; i < gx.data.size(); ++i) {
            const double r = gx.data[i] - gn.data[i];
            reg += std::pow(r * r + kIrlsEps * kIrlsEps, 0.5 * gamma);
        }
    }
    return mu_g * quad + reg;
}

FuseResult gradient_reg_fuse(const ImagePlane& vis_l, const ImagePlane& nir,
                             double mu_g, double gamma) {
    if (!vis_l.same_dims(nir)) throw InputError("gradient_reg_fuse: dimension mismatch");
    if (!(mu_g > 0.0)) throw ParamError("gradient_reg_fuse: mu_g must be positive");
    if (!(gamma > 0.0) || gamma > 1.0) throw ParamError("gradient_reg_fuse: gamma in (0,1]");

    const ImagePlane gnh = gradient(nir, Axis::Horizontal);
    const ImagePlane gnv = gradient(nir, Axis::Vertical);

    FuseResult res;
    ImagePlane x = vis_l;
    res.objective_trace.push_back(gradient_reg_objective(x, vis_l, nir, mu_g, gamma));

    for (int round = 0; round < 10; ++round) {
        // majorizer weights: tangent of (r^2 + eps^2)^(gamma/2) in r^2,
        // so each round provably decreases the smoothed objective
        IrlsWeights w{ImagePlane(x.width, x.height), ImagePlane(x.width, x.height)};
        const ImagePlane gxh = gradient(x, Axis::Horizontal);
        const ImagePlane gxv = gradient(x, Axis::Vertical);
        for (std::size_t i = 0; i < w.wh.data.size(); ++i) {
            const double rh = gxh.data[i] - gnh.data[i];
            const double rv = gxv.data[i] - gnv.data[i];
            w.wh.data[i] = 0.5 * gamma * std::pow(rh * rh + kIrlsEps * kIrlsEps, 0.5 * gamma - 1.0);
            w.wv.data[i] = 0.5 * gamma * std::pow(rv * rv + kIrlsEps * kIrlsEps, 0.5 * gamma - 1.0);
        }
        // rhs = mu_g v + sum_j grad_j^T (w_j . grad_j nir)
        ImagePlane th = gnh, tv = gnv;
        for (std::size_t i = 0; i < th.data.size(); ++i) {
            th.data[i] *= w.wh.data[i];
            tv.data[i] *= w.wv.data[i];
        }
        ImagePlane rhs = gradient_adjoint(th, Axis::Horizontal);
        const ImagePlane rv = gradient_adjoint(tv, Axis::Vertical);
        for (std::size_t i = 0; i < rhs.data.size(); ++i)
            rhs.data[i] += rv.data[i] + mu_g * vis_l.data[i];

        ImagePlane x_new = solve_irls_quadratic(rhs, mu_g, w, x);
        const double obj = gradient_reg_objective(x_new, vis_l, nir, mu_g, gamma);
        if (obj <= res.objective_trace.back() + 1e-12) {
            x = std::move(x_new);
            res.objective_trace.push_back(obj);
        } else {
            if (obj > res.objective_trace.back() + 1e-6) res.warning = true;
            break;  // reweighting from the same iterate cannot improve further
        }
    }
    res.plane = std::move(x);
    return res;
}

ImagePlane wavelet_fuse(const ImagePlane& vis_l, const ImagePlane& nir,
                        double omega_l, int levels, WaveletKind kind) {
    if (!vis_l.same_dims(nir)) throw InputError("wavelet_fuse: dimension mismatch");
    if (omega_l < 0.0 || omega_l > 1.0) throw ParamError("wavelet_fuse: omega_l in [0,1]");
    if (levels < 1) throw ParamError("wavelet_fuse: levels must be >= 1");

    const int div = 1 << levels;
    const int pw = (vis_l.width + div - 1) / div * div;
    const int ph = (vis_l.height + div - 1) / div * div;

    auto padded = [&](const ImagePlane& p) {
        if (pw == p.width && ph == p.height) return p;
        ImagePlane out(pw, ph);
        for (int y = 0; y < ph; ++y)
            for (int x = 0; x < pw; ++x) out.at(x, y) = p.at_clamped(x, y);
        return out;
    };

    const ImagePlane cv = dwt2(padded(vis_l), levels, kind);
    const ImagePlane cn = dwt2(padded(nir), levels, kind);

    const int llw = pw >> levels, llh = ph >> levels;
    ImagePlane fused(pw, ph);
    for (int y = 0; y < ph; ++y) {
        for (int x = 0; x < pw; ++x) {
            const double a = cv.at(x, y), b = cn.at(x, y);
            if (x < llw && y < llh)
                fused.at(x, y) = omega_l * a + (1.0 - omega_l) * b;
            else
                fused.at(x, y) = std::fabs(a) >= std::fabs(b) ? a : b;
        }
    }

    ImagePlane recon = idwt2(fused, levels, kind);
    if (pw == vis_l.width && ph == vis_l.height) return recon;
    ImagePlane out(vis_l.width, vis_l.height);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) out.at(x, y) = recon.at(x, y);
    return out;
}

RgbImage statistical_fuse(const RgbImage& vis, const ImagePlane& nir, int window) {
    if (vis.width != nir.width || vis.height != nir.height)
        throw InputError("statistical_fuse: dimension mismatch");
    if (window < 3 || window % 2 == 0)
        throw ParamError("statistical_fuse: window must be odd and >= 3");

    OpponentImage opp = forward_opponent(vis);
    const ImagePlane vl = luminance_to_gray(opp.l);
    constexpr double kStdFloor = 1e-4;

    ImagePlane lum(vl.width, vl.height);
    ImagePlane c1 = opp.c1, c2 = opp.c2;
    for (int y = 0; y < vl.height; ++y) {
        for (int x = 0; x < vl.width; ++x) {
            double mv, vv, mn, vn;
            local_stats(extract_patch(vl, x, y, window), mv, vv);
            local_stats(extract_patch(nir, x, y, window), mn, vn);
            const double sv = std::max(std::sqrt(vv), kStdFloor);
            const double sn = std::max(std::sqrt(vn), kStdFloor);
            const double ratio = sn / sv;
            lum.at(x, y) = mn + (vl.at(x, y) - mv) * ratio;
            const std::size_t i = static_cast<std::size_t>(y) * vl.width + x;
            c1.data[i] *= ratio;
            c2.data[i] *= ratio;
        }
    }
    return backward_opponent(OpponentImage(gray_to_luminance(lum), std::move(c1), std::move(c2)));
}

}  // namespace nirfuse
