#include "topotensor/topo.hpp"

#include <algorithm>

namespace topotensor {

std::vector<double> make_coefficients(const CoefficientScheme& s, int length) {
    if (length < 1) throw SchemeError("coefficient length must be positive");
    if (s.kind == SchemeKind::explicit_values) {
        if (static_cast<int>(s.values.size()) != length)
            throw SchemeError("explicit coefficient count does not match the signature length");
        return s.values;
    }
    std::vector<double> c(length);
    for (int k = 0; k < length; ++k) c[k] = s.a * k + s.b;
    return c;
}

double topological_eigenvalue(const BettiSignature& betti, const std::vector<double>& coeffs) {
    if (betti.size() != coeffs.size())
        throw SchemeError("coefficient count does not match the signature length");
    double lambda = 0.0;
    for (std::size_t k = 0; k < betti.size(); ++k) lambda += coeffs[k] * betti[k];
    return lambda;
}

long long eigenvalue_count_bound(const BettiSignature& betti) {
    long long bound = 0;
    for (int b : betti) bound += b;
    return bound;
}

TopoEigenReport topo_eigen_report(const BettiSignature& b, const CoefficientScheme& s) {
    TopoEigenReport r;
    r.betti = b;
    r.coeffs = make_coefficients(s, static_cast<int>(b.size()));
    r.lambda_topo = topological_eigenvalue(b, r.coeffs);
    r.count_bound = eigenvalue_count_bound(b);
    return r;
}

InvarianceResult invariance_check(const SimplicialComplex& c1,
                                  const SimplicialComplex& c2,
                                  const CoefficientScheme& s) {
    const int up_to = std::max({c1.dimension(), c2.dimension(), 0});
    const BettiSignature b1 = betti(c1, up_to);
    const BettiSignature b2 = betti(c2, up_to);
    const std::vector<double> coeffs = make_coefficients(s, up_to + 1);

    InvarianceResult r;
    r.equivalent_signature = (b1 == b2);
    r.lambda1 = topological_eigenvalue(b1, coeffs);
    r.lambda2 = topological_eigenvalue(b2, coeffs);
    return r;
}

CountBoundDiagnostic count_bound_diagnostic(const Tensor& t,
                                            const ComplexStrategy& s,
                                            const SolverConfig& cfg) {
    const std::vector<EigenPair> pairs = z_eigenpairs(t, cfg);
    const SimplicialComplex complex = build_complex(t, s);
    const BettiSignature signature = betti(complex, t.order() - 1);

    CountBoundDiagnostic d;
    d.distinct_eigenvalues = static_cast<long long>(pairs.size());
    d.bound = eigenvalue_count_bound(signature);
    d.satisfied = d.distinct_eigenvalues <= d.bound;
    return d;
}

}  // namespace topotensor
