#include "kpdm/quadrature.hpp"

#include "kpdm/errors.hpp"

#include <algorithm>
#include <sstream>

namespace kpdm::detail {

void check_quadrature(const QuadratureResult& r, const QuadratureOptions& opt, double a, double b) {
    const double allowed = std::max(opt.abs_tol, opt.rel_tol * r.l1);
    if (!std::isfinite(r.value) || r.error > allowed) {
        std::ostringstream msg;
        msg << "quadrature on [" << a << ", " << b << "] did not converge: error estimate "
            << r.error << " exceeds " << allowed << " after " << opt.max_levels << " levels";
        throw NumericError(msg.str(), r.error);
    }
}

}  // namespace kpdm::detail
