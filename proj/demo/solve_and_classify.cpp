// Prints exponents for a few cones, solves one boundary value problem per cone and
// checks the resulting profile against the classification.
#include <cstdio>
#include <variant>

#include "ccl/ccl.hpp"

int main() {
    using namespace ccl;
    const Cone cones[] = {Cone::gamma_k(4, 1), Cone::gamma_k(4, 2), Cone::gamma_k(4, 3), Cone::sigma_theta(4, 1.0)};
    const Annulus ann(0.5, 2.0);
    for (const auto& c : cones) {
        const auto p = cone_profile(c);
        std::printf("%-28s mu+ = %-8.5g mu- = %-8.5g axis on boundary: %s\n", c.describe().c_str(), p.mu_plus,
                    p.mu_minus, p.axis_on_boundary ? "yes" : "no");
        for (double alpha : {3.0, 0.5}) {
            const auto res = solve_radial_bvp(p, ann, alpha, 1.0);
            if (const auto* bad = std::get_if<Infeasible>(&res)) {
                std::printf("    u(0.5) = %.2f, u(2) = 1: %s\n", alpha, bad->message().c_str());
                continue;
            }
            const auto& fam = std::get<RadialFamily>(res);
            const auto rep = validate_family(p, fam, ann, 200);
            std::printf("    u(0.5) = %.2f, u(2) = 1: %-9s u(1) = %.6f residual %.2e %s\n", alpha, fam.name().c_str(),
                        family_value(fam, 1.0), rep.max_residual, rep.pass ? "ok" : "FAILED");
        }
    }
}
