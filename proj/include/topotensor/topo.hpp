#ifndef TOPOTENSOR_TOPO_HPP
#define TOPOTENSOR_TOPO_HPP

#include <vector>

#include "topotensor/eigenpairs.hpp"
#include "topotensor/simplicial.hpp"

namespace topotensor {

enum class SchemeKind { explicit_values, affine };

/**
 * Rule producing the weights c_0..c_{K} applied to a Betti signature.
 * affine yields c_k = a*k + b; explicit_values passes `values` through and
 * must match the signature length at evaluation time.
 */
struct CoefficientScheme {
    SchemeKind kind = SchemeKind::affine;
    std::vector<double> values;  // explicit_values
    double a = 1.0;              // affine
    double b = 2.0;

    static CoefficientScheme affine(double a, double b) {
        CoefficientScheme s;
        s.kind = SchemeKind::affine;
        s.a = a;
        s.b = b;
        return s;
    }
    static CoefficientScheme explicit_values(std::vector<double> values) {
        CoefficientScheme s;
        s.kind = SchemeKind::explicit_values;
        s.values = std::move(values);
        return s;
    }
};

struct TopoEigenReport {
    BettiSignature betti;
    std::vector<double> coeffs;
    double lambda_topo = 0.0;   // sum of coeffs[k] * betti[k]
    long long count_bound = 0;  // sum of betti[k]
};

// Realizes a scheme at a given length. Throws SchemeError on length mismatch.
std::vector<double> make_coefficients(const CoefficientScheme& s, int length);

// Dot product of the signature with the coefficient list.
double topological_eigenvalue(const BettiSignature& betti, const std::vector<double>& coeffs);

// Upper bound on the number of distinct eigenvalues: sum of all Betti numbers.
long long eigenvalue_count_bound(const BettiSignature& betti);

TopoEigenReport topo_eigen_report(const BettiSignature& betti, const CoefficientScheme& s);

struct InvarianceResult {
    bool equivalent_signature = false;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

/**
 * Necessary-condition check for topological equivalence: compares the
 * zero-padded Betti signatures of two complexes and evaluates the same
 * coefficient scheme on both. Equal signatures force lambda1 == lambda2.
 */
InvarianceResult invariance_check(const SimplicialComplex& c1,
                                  const SimplicialComplex& c2,
                                  const CoefficientScheme& s);

struct CountBoundDiagnostic {
    long long distinct_eigenvalues = 0;
    long long bound = 0;
    bool satisfied = false;
};

/**
 * Compares the size of the computed spectrum against the Betti-sum bound of
 * the tensor's complex. Reports only; a violated bound is data, not an error.
 */
CountBoundDiagnostic count_bound_diagnostic(const Tensor& t,
                                            const ComplexStrategy& s,
                                            const SolverConfig& cfg);

}  // namespace topotensor

#endif
