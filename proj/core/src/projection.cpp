#include "nij/projection.hpp"

#include "nij/differential.hpp"
#include "nij/error.hpp"
#include "nij/nijenhuis.hpp"

namespace nij {

ConnectionProjection diagonalizable_connection_projection(const TensorField& j, const Rational& c,
                                                          const ConnectionCoefficients& nabla) {
    if (j.upper() != 1 || j.lower() != 1) throw InputError("J must be a (1,1) tensor");
    if (c.is_zero()) throw InputError("J^2 = c Id requires c != 0");
    if (!(j.chart() == nabla.chart())) throw InputError("chart mismatch");
    const Chart& chart = j.chart();
    if (!(compose(j, j) == chart.constant(c) * identity_endomorphism(chart)))
        throw InputError("J^2 is not " + c.str() + " Id");
    if (!nabla.is_torsion_free()) throw InputError("connection is not torsion-free");

    int n = static_cast<int>(chart.dim());
    TensorField dj = covariant_derivative(j, nabla);
    std::vector<TensorField> e, nab_e, je;
    for (int a = 0; a < n; ++a) {
        e.push_back(TensorField::coordinate_field(chart, a));
        nab_e.push_back(contract_last(dj, e.back()));
        je.push_back(apply(j, e.back()));
    }
    ScalarField scale = chart.constant((Rational(4) * c).inverse());
    ConnectionProjection res;
    res.b = TensorField(chart, 1, 2);
    std::vector<ScalarField> hat(static_cast<std::size_t>(n * n * n), chart.zero());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
            TensorField v = apply(j, apply(nab_e[ua], e[ub]));
            v += v;
            v += apply(j, apply(nab_e[ub], e[ua]));
            v += apply(contract_last(dj, je[ub]), e[ua]);
            for (const auto& [k, x] : v.components()) res.b.set({k[0], a, b}, scale * x);
        }
    res.b_symmetric = true;
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (!(res.b.get({i, a, b}) == res.b.get({i, b, a}))) res.b_symmetric = false;
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                hat[static_cast<std::size_t>((i * n + a) * n + b)] = nabla(i, a, b) + res.b.get({i, a, b});
    res.hat = ConnectionCoefficients::general(chart, std::move(hat));
    res.hat_torsion_free = res.hat.is_torsion_free();
    res.hat_parallel = covariant_derivative(j, res.hat).is_zero();
    res.nijenhuis_vanishes = nijenhuis_11(j).is_zero();
    return res;
}

}  // namespace nij
