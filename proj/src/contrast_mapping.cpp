#include "nirfuse/contrast_mapping.hpp"

#include <cmath>

#include "nirfuse/parallel.hpp"

namespace nirfuse {

namespace {

// center/mean brightness ratio with a sign-preserving floor on |mean|
inline double contrast_ratio(double center, double mean) {
    double d = mean;
    if (std::fabs(d) < kPriorMeanFloor) d = d < 0.0 ? -kPriorMeanFloor : kPriorMeanFloor;
    return center / d;
}

inline double prior_slope(double nir_center, double nir_mean, double nir_var,
                          double vis_center, double vis_mean, double vis_var) {
    const double vsum = nir_var + vis_var;
    const double w1 = vsum > 0.0 ? nir_var / vsum : 0.5;
    return w1 * contrast_ratio(nir_center, nir_mean) +
           (1.0 - w1) * contrast_ratio(vis_center, vis_mean);
}

}  // namespace

ContrastPrior contrast_prior(const PatchWindow& nir_patch, const PatchWindow& vis_patch) {
    if (nir_patch.size != vis_patch.size)
        throw ParamError("contrast_prior: patch sizes differ");
    double mn, vn, mv, vv;
    local_stats(nir_patch, mn, vn);
    local_stats(vis_patch, mv, vv);
    ContrastPrior p;
    p.slope0 = prior_slope(nir_patch.center(), mn, vn, vis_patch.center(), mv, vv);
    p.bias0 = 0.0;
    return p;
}

MappingField solve_mapping(const ImagePlane& vis_l, const ImagePlane& nir,
                           int m, double mu_c, double sigma_s) {
    if (!vis_l.same_dims(nir)) throw InputError("solve_mapping: dimension mismatch");
    if (m < 3 || m % 2 == 0) throw ParamError("solve_mapping: m must be odd and >= 3");
    if (mu_c < 0.0) throw ParamError("solve_mapping: mu_c must be >= 0");
    if (sigma_s <= 0.0) sigma_s = m / 3.0;

    const SpatialWeights weights = spatial_weights(m, sigma_s);
    const int r = m / 2;
    const int w = nir.width, h = nir.height;
    const double n2 = static_cast<double>(m) * m;
    MappingField field(w, h);

    parallel_rows(h, [&](int y) {
        std::vector<double> q(static_cast<std::size_t>(m) * m);
        std::vector<double> p(static_cast<std::size_t>(m) * m);
        for (int x = 0; x < w; ++x) {
            std::size_t k = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx, ++k) {
                    q[k] = nir.at_clamped(x + dx, y + dy);
                    p[k] = vis_l.at_clamped(x + dx, y + dy);
                }

            double sq = 0.0, sp = 0.0;
            double ws = 0.0, wq = 0.0, wq2 = 0.0, wp = 0.0, wqp = 0.0;
            for (k = 0; k < q.size(); ++k) {
                const double wi = weights.diag[k];
                sq += q[k];
                sp += p[k];
                ws += wi;
                wq += wi * q[k];
                wq2 += wi * q[k] * q[k];
                wp += wi * p[k];
                wqp += wi * q[k] * p[k];
            }
            const double mq = sq / n2, mp = sp / n2;
            double vq = 0.0, vp = 0.0;
            for (k = 0; k < q.size(); ++k) {
                vq += (q[k] - mq) * (q[k] - mq);
                vp += (p[k] - mp) * (p[k] - mp);
            }
            vq /= n2;
            vp /= n2;

            const double s0 = prior_slope(nir.at(x, y), mq, vq, vis_l.at(x, y), mp, vp);

            const double a00 = wq2 + mu_c;
            const double a01 = wq;
            const double a11 = ws + mu_c;
            const double b0 = wqp + mu_c * s0;
            const double b1 = wp;
            const double det = a00 * a11 - a01 * a01;
            const double scale = std::max(1.0, std::fabs(a00) * std::fabs(a11));

            if (det <= 1e-12 * scale) {
                // constant NIR patch with mu_c = 0: fit is rank deficient
                field.slope.at(x, y) = s0;
                field.bias.at(x, y) = mp - s0 * mq;
                field.fallback[static_cast<std::size_t>(y) * w + x] = 1;
            } else {
                field.slope.at(x, y) = (b0 * a11 - b1 * a01) / det;
                field.bias.at(x, y) = (a00 * b1 - a01 * b0) / det;
            }
        }
    });
    return field;
}

ImagePlane apply_mapping(const ImagePlane& nir, const MappingField& field) {
    if (nir.width != field.width || nir.height != field.height)
        throw InputError("apply_mapping: dimension mismatch");
    ImagePlane out(nir.width, nir.height);
    for (std::size_t i = 0; i < nir.data.size(); ++i)
        out.data[i] = nir.data[i] * field.slope.data[i] + field.bias.data[i];
    return out;
}

double validate_linearity(const ImagePlane& vis_l, const ImagePlane& nir, int m) {
    const MappingField field = solve_mapping(vis_l, nir, m, 0.0);
    const ImagePlane mapped = apply_mapping(nir, field);
    double se = 0.0;
    for (std::size_t i = 0; i < vis_l.data.size(); ++i) {
        const double d = vis_l.data[i] - mapped.data[i];
        se += d * d;
    }
    return se / static_cast<double>(vis_l.data.size());
}

}  // namespace nirfuse
