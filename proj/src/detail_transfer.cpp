#include "nirfuse/detail_transfer.hpp"

#include <algorithm>
#include <cmath>

#include "dft.hpp"

namespace nirfuse {

ImagePlane gradient(const ImagePlane& plane, Axis axis) {
    const int w = plane.width, h = plane.height;
    ImagePlane out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double next = axis == Axis::Horizontal
                                    ? plane.at((x + 1) % w, y)
                                    : plane.at(x, (y + 1) % h);
            out.at(x, y) = next - plane.at(x, y);
        }
    }
    return out;
}

double soft_threshold(double t, double tau) {
    const double m = std::fabs(t) - tau;
    return m > 0.0 ? (t > 0.0 ? m : -m) : 0.0;
}

double detail_objective(const ImagePlane& d, const ImagePlane& d0,
                        const ImagePlane& dn, double mu_d) {
    double quad = 0.0;
    for (std::size_t i = 0; i < d.data.size(); ++i) {
        const double r = d.data[i] - d0.data[i];
        quad += r * r;
    }
    double l1 = 0.0;
    for (Axis axis : {Axis::Horizontal, Axis::Vertical}) {
        const ImagePlane gd = gradient(d, axis);
        const ImagePlane gn = gradient(dn, axis);
        for (std::size_t i = 0; i < gd.data.size(); ++i)
            l1 += std::fabs(gd.data[i] - gn.data[i]);
    }
    return mu_d * quad + l1;
}

namespace {

ImagePlane spectral_quadratic(const ComplexGrid& d0_hat, const ImagePlane& th,
                              const ImagePlane& tv, const ComplexGrid& fx,
                              const ComplexGrid& fy, double mu, double beta,
                              int w, int h) {
    const ComplexGrid th_hat = dft2(th);
    const ComplexGrid tv_hat = dft2(tv);
    ComplexGrid x_hat(d0_hat.size());
    for (std::size_t i = 0; i < x_hat.size(); ++i) {
        const double denom = mu + beta * (std::norm(fx[i]) + std::norm(fy[i]));
        x_hat[i] = (mu * d0_hat[i] +
                    beta * (std::conj(fx[i]) * th_hat[i] + std::conj(fy[i]) * tv_hat[i])) /
                   denom;
    }
    return idft2_real(x_hat, w, h);
}

}  // namespace

ImagePlane solve_detail_quadratic(const ImagePlane& d0, const ImagePlane& th,
                                  const ImagePlane& tv, double mu, double beta) {
    if (!d0.same_dims(th) || !d0.same_dims(tv))
        throw InputError("solve_detail_quadratic: dimension mismatch");
    const int w = d0.width, h = d0.height;
    return spectral_quadratic(dft2(d0), th, tv, derivative_multiplier(w, h, true),
                              derivative_multiplier(w, h, false), mu, beta, w, h);
}

DetailSolveResult solve_detail(const ImagePlane& d0, const ImagePlane& dn,
                               const DetailSolveParams& params) {
    params.validate();
    if (!d0.same_dims(dn)) throw InputError("solve_detail: dimension mismatch");
    const int w = d0.width, h = d0.height;
    const double mu = params.mu_d;

    const ComplexGrid fx = derivative_multiplier(w, h, true);
    const ComplexGrid fy = derivative_multiplier(w, h, false);
    const ComplexGrid d0_hat = dft2(d0);
    const ImagePlane gnh = gradient(dn, Axis::Horizontal);
    const ImagePlane gnv = gradient(dn, Axis::Vertical);

    DetailSolveResult res;
    ImagePlane x = d0;
    res.objective_trace.push_back(detail_objective(x, d0, dn, mu));
    ImagePlane best = x;
    double best_obj = res.objective_trace.front();

    double beta = params.beta0 > 0.0 ? params.beta0 : 2.0 * mu;
    beta = std::min(beta, params.beta_max);

    ImagePlane th(w, h), tv(w, h);
    for (int stage = 0; stage < params.iterations; ++stage) {
        const double tau = 1.0 / (2.0 * beta);
        for (int inner = 0; inner < params.inner_max; ++inner) {
            // shrink step on the gradient differences
            for (int y = 0; y < h; ++y) {
                for (int xx = 0; xx < w; ++xx) {
                    const double gh = x.at((xx + 1) % w, y) - x.at(xx, y) - gnh.at(xx, y);
                    const double gv = x.at(xx, (y + 1) % h) - x.at(xx, y) - gnv.at(xx, y);
                    th.at(xx, y) = soft_threshold(gh, tau) + gnh.at(xx, y);
                    tv.at(xx, y) = soft_threshold(gv, tau) + gnv.at(xx, y);
                }
            }
            // quadratic step, exact under periodic boundary
            ImagePlane x_new = spectral_quadratic(d0_hat, th, tv, fx, fy, mu, beta, w, h);
            double delta = 0.0;
            for (std::size_t i = 0; i < x.data.size(); ++i)
                delta = std::max(delta, std::fabs(x_new.data[i] - x.data[i]));
            x = std::move(x_new);
            if (delta < params.inner_tol) break;
        }
        const double obj = detail_objective(x, d0, dn, mu);
        if (obj > res.objective_trace.back() + 1e-9) res.warning = true;
        res.objective_trace.push_back(obj);
        if (obj < best_obj) {
            best_obj = obj;
            best = x;
        }
        beta = std::min(beta * params.beta_mult, params.beta_max);
    }

    res.detail = std::move(best);
    return res;
}

TransferResult transfer_detail(const ImagePlane& new_l, const ImagePlane& nir,
                               const NlmParams& nlm, const DetailSolveParams& params) {
    if (!new_l.same_dims(nir)) throw InputError("transfer_detail: dimension mismatch");
    const LayerPair ln = base_layer(new_l, nlm);
    const LayerPair li = base_layer(nir, nlm);
    DetailSolveResult solved = solve_detail(ln.detail, li.detail, params);
    TransferResult out;
    out.plane = plane_add(ln.base, solved.detail);
    out.warning = solved.warning;
    return out;
}

}  // namespace nirfuse
