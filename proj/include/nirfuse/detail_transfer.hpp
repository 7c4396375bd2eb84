// Detail layer transfer: pull the gradients of the new luminance's
// detail layer toward the captured NIR's detail gradients by solving
//
//   min_d  mu_d ||d - d0||^2 + sum_j |grad_j d - grad_j dn|_1
//
// with half-quadratic splitting (soft-threshold shrink + an exact
// frequency-domain quadratic step under periodic boundary).

#ifndef NIRFUSE_DETAIL_TRANSFER_HPP
#define NIRFUSE_DETAIL_TRANSFER_HPP

#include <vector>

#include "nirfuse/image.hpp"
#include "nirfuse/smoothing.hpp"

namespace nirfuse {

enum class Axis { Horizontal, Vertical };

/// Forward difference with periodic wrap along the chosen axis.
ImagePlane gradient(const ImagePlane& plane, Axis axis);

/// sign(t) * max(|t| - tau, 0)
double soft_threshold(double t, double tau);

struct DetailSolveParams {
    double mu_d = 200.0;
    int iterations = 10;      // outer beta stages
    double beta0 = 0.0;       // 0 selects 2 * mu_d
    double beta_mult = 2.0;
    double beta_max = 1e15;
    int inner_max = 25;       // alternations per stage
    double inner_tol = 1e-7;  // stop a stage once the iterate stabilizes

    void validate() const {
        if (!(mu_d > 0.0)) throw ParamError("DetailSolveParams: mu_d must be positive");
        if (iterations < 1) throw ParamError("DetailSolveParams: iterations must be >= 1");
        if (beta_mult < 1.0 || !(beta_max > 0.0))
            throw ParamError("DetailSolveParams: beta schedule must be non-decreasing");
    }
};

struct DetailSolveResult {
    ImagePlane detail;
    std::vector<double> objective_trace;  // exact objective after each stage
    bool warning = false;                 // objective rose beyond tolerance
};

/// Exact value of the objective above (L1 not smoothed).
double detail_objective(const ImagePlane& d, const ImagePlane& d0,
                        const ImagePlane& dn, double mu_d);

/// Exact periodic-boundary minimizer of
///   mu ||x - d0||^2 + beta (||grad_h x - th||^2 + ||grad_v x - tv||^2)
/// via the frequency domain; the quadratic step of solve_detail.
ImagePlane solve_detail_quadratic(const ImagePlane& d0, const ImagePlane& th,
                                  const ImagePlane& tv, double mu, double beta);

DetailSolveResult solve_detail(const ImagePlane& d0, const ImagePlane& dn,
                               const DetailSolveParams& params);

struct TransferResult {
    ImagePlane plane;
    bool warning = false;
};

/// Decompose both inputs, solve for the transferred detail, and return
/// base(new_l) + detail.
TransferResult transfer_detail(const ImagePlane& new_l, const ImagePlane& nir,
                               const NlmParams& nlm, const DetailSolveParams& params);

}  // namespace nirfuse

#endif
