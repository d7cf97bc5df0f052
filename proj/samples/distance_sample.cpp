// d(P, beta) for P(z) = (z - beta)(z + 1) and for the non-real quartic, at 40 digits.

#include <cstdio>

#include "sendov/sendov.hpp"

int main() {
    using namespace sendov;
    PrecisionContext ctx(40);
    using Real = mp_real<64>;  // 40 significant + 10 guard digits fit in the 64-digit tier

    const Real beta = real_from_string<Real>("0.3");
    std::vector<Complex<Real>> roots{Complex<Real>(beta), Complex<Real>(Real(-1))};
    auto inst = make_instance(from_roots(roots), Complex<Real>(beta), ctx);
    std::printf("(z - 0.3)(z + 1):  d = %s, closed form (1 + beta)/2 = %s\n",
                to_decimal(*inst.d_value, 40).c_str(), to_decimal(r2_formula(beta), 40).c_str());

    auto rep = nonreal_exhibit<Real>(ctx);
    std::printf("non-real quartic:  d = %s, |P'(beta)| = %s, (1 + beta)^2 = %s\n", to_decimal(rep.d, 20).c_str(),
                to_decimal(rep.derivative_at_beta, 20).c_str(), to_decimal(rep.derivative_bound, 20).c_str());

    SearchConfig cfg;
    cfg.degree = 3;
    cfg.beta = 0.5;
    auto rec = estimate_rn(cfg);
    std::printf("search r_3(0.5) >= %s, closed form %.17g\n", rec.best_d_text.c_str(), r3_formula(0.5));
    return 0;
}
