// Usage example for weakly convex targets: wrap the target in the proximal
// shift, alternate forward noising and backward restricted-Gaussian steps,
// and compare one backward step against the quadratic closed form.

#include <cstdio>

#include "warmhmc/potentials/gaussian.hpp"
#include "warmhmc/samplers/proximal_sampler.hpp"

int main() {
    using namespace warmhmc;
    const long d = 8;
    Vector spectrum = Vector::LinSpaced(d, 1.0, 4.0);
    auto base = make_gaussian(spectrum);
    const double h_prox = 1.0 / (2.0 * base->meta().beta);

    const PlanFactory factory = make_rgo_plan_factory(0.3, base->meta().kappa());
    RngStream rng(7, 0);
    const ProximalResult result = proximal_sampler(*base, factory, h_prox, 6, rng);

    std::printf("outer alternation of %zu steps, %llu base-gradient queries total\n",
                result.trajectory.size() - 1,
                static_cast<unsigned long long>(result.grad_queries));
    std::printf("final |x| = %.4f\n", result.sample.x.norm());

    // One backward step from a fixed data point, against the closed form.
    RngStream rng2(8, 0);
    const Vector y = rng2.normal_vector(d);
    const RgoClosedForm cf = rgo_gaussian_closed_form(spectrum, y, h_prox);
    std::printf("closed-form backward mean norm %.4f, first variance %.5f\n", cf.mean.norm(),
                cf.cov_diag[0]);
    return 0;
}
