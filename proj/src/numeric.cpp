#include "cantorlab/numeric.hpp"

#include <mpfr.h>

#include <cmath>

#include "cantorlab/errors.hpp"

namespace cantorlab {

namespace {

// log of a positive rational with directed rounding.
void log_of_rat(mpfr_t out, const Rat& q, mpfr_rnd_t rnd) {
    mpfr_t x;
    mpfr_init2(x, mpfr_get_prec(out));
    mpfr_set_q(x, q.get_mpq_t(), rnd);
    mpfr_log(out, x, rnd);
    mpfr_clear(x);
}

}  // namespace

long certified_ceil_c_log_inv(const Rat& c, const Rat& eps) {
    if (!(c > 0)) fail(Errc::InvalidArgument, "c must be positive");
    if (!(eps > 0 && eps < 1)) fail(Errc::InvalidArgument, "epsilon must lie in (0,1)");
    Rat inv_eps = 1 / eps;
    Rat mult = c / eps;
    for (mpfr_prec_t prec = 128; prec <= 8192; prec *= 2) {
        mpfr_t llo, lhi, vlo, vhi, m;
        mpfr_inits2(prec, llo, lhi, vlo, vhi, m, static_cast<mpfr_ptr>(nullptr));
        log_of_rat(llo, inv_eps, MPFR_RNDD);
        log_of_rat(lhi, inv_eps, MPFR_RNDU);
        mpfr_set_q(m, mult.get_mpq_t(), MPFR_RNDD);
        mpfr_mul(vlo, llo, m, MPFR_RNDD);
        mpfr_set_q(m, mult.get_mpq_t(), MPFR_RNDU);
        mpfr_mul(vhi, lhi, m, MPFR_RNDU);
        mpfr_ceil(vlo, vlo);
        mpfr_ceil(vhi, vhi);
        long a = mpfr_get_si(vlo, MPFR_RNDN);
        long b = mpfr_get_si(vhi, MPFR_RNDN);
        mpfr_clears(llo, lhi, vlo, vhi, m, static_cast<mpfr_ptr>(nullptr));
        if (a == b) return a;
    }
    fail(Errc::ToleranceNotMet, "ceiling bracket did not collapse at 8192 bits");
}

bool certified_proportion_chain(const Rat& f, long n0, const Rat& a, const Rat& eps) {
    if (!(f > 0 && f < 1 && a > 0 && a < 1 && eps > 0 && eps < 1))
        fail(Errc::InvalidArgument, "chain check needs f, a, eps in (0,1)");
    Rat one_f = 1 - f, one_a = 1 - a;
    for (mpfr_prec_t prec = 128; prec <= 8192; prec *= 2) {
        // lhs_log = n0 log(1-f) + log(1-a); rhs_log = (4/3) log(eps). Both
        // negative; certify lhs_log < rhs_log strictly.
        mpfr_t t, lhs_hi, lhs_lo, rhs_hi, rhs_lo;
        mpfr_inits2(prec, t, lhs_hi, lhs_lo, rhs_hi, rhs_lo, static_cast<mpfr_ptr>(nullptr));

        log_of_rat(t, one_f, MPFR_RNDU);  // log(1-f) < 0, upper end
        mpfr_mul_si(lhs_hi, t, n0, MPFR_RNDU);
        log_of_rat(t, one_a, MPFR_RNDU);
        mpfr_add(lhs_hi, lhs_hi, t, MPFR_RNDU);

        log_of_rat(t, one_f, MPFR_RNDD);
        mpfr_mul_si(lhs_lo, t, n0, MPFR_RNDD);
        log_of_rat(t, one_a, MPFR_RNDD);
        mpfr_add(lhs_lo, lhs_lo, t, MPFR_RNDD);

        log_of_rat(t, eps, MPFR_RNDD);  // log(eps) < 0
        mpfr_mul_ui(rhs_lo, t, 4, MPFR_RNDD);
        mpfr_div_ui(rhs_lo, rhs_lo, 3, MPFR_RNDD);
        log_of_rat(t, eps, MPFR_RNDU);
        mpfr_mul_ui(rhs_hi, t, 4, MPFR_RNDU);
        mpfr_div_ui(rhs_hi, rhs_hi, 3, MPFR_RNDU);

        bool holds = mpfr_cmp(lhs_hi, rhs_lo) < 0;
        bool fails_chain = mpfr_cmp(lhs_lo, rhs_hi) >= 0;
        mpfr_clears(t, lhs_hi, lhs_lo, rhs_hi, rhs_lo, static_cast<mpfr_ptr>(nullptr));
        if (holds) return true;
        if (fails_chain) return false;
    }
    fail(Errc::ToleranceNotMet, "inequality bracket did not separate at 8192 bits");
}

int k_bound_for_dimension(double hd) {
    if (!(hd > 0.0 && hd < 1.0)) fail(Errc::InvalidArgument, "dimension must lie in (0,1)");
    return static_cast<int>(std::floor(1.0 / (1.0 - hd))) + 1;
}

}  // namespace cantorlab
