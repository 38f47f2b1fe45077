#ifndef SPECLAB_DIAGONAL_MODEL_HPP
#define SPECLAB_DIAGONAL_MODEL_HPP

#include "speclab/numeric.hpp"

#include <cstddef>
#include <set>
#include <vector>

namespace speclab {

// Finite-dimensional normal operator in its eigenbasis, carrying the
// two-norm pair: H is plain l2 on the coefficients, N is the weighted l_q
// norm ||x||_N = (sum (w_j |x_j|)^q)^(1/q) (max for q = inf). Index positions
// 0..M-1 play the role of the index set Theta.
struct DiagonalModel {
    std::vector<Complex> eigenvalues;  // repeats allowed
    std::vector<double> weights;       // all positive
    double q = 2.0;                    // in [1, inf]; use INFINITY for sup

    DiagonalModel(std::vector<Complex> eigenvalues_, std::vector<double> weights_,
                  double q_);

    std::size_t size() const { return eigenvalues.size(); }
    double n_norm(const std::vector<Complex>& x) const;
};

// Bounded nonvanishing symbols evaluated at the eigenvalue positions.
// Positions sharing an eigenvalue must carry identical values, since the
// symbols are functions of the eigenvalue.
struct SymbolPair {
    std::vector<Complex> omega;
    std::vector<Complex> eta;

    SymbolPair(const DiagonalModel& model, std::vector<Complex> omega_,
               std::vector<Complex> eta_);

    template <class OmegaFn, class EtaFn>
    static SymbolPair from_functions(const DiagonalModel& model, OmegaFn&& w, EtaFn&& e) {
        std::vector<Complex> ov, ev;
        ov.reserve(model.size());
        ev.reserve(model.size());
        for (const Complex& lambda : model.eigenvalues) {
            ov.push_back(w(lambda));
            ev.push_back(e(lambda));
        }
        return SymbolPair(model, std::move(ov), std::move(ev));
    }
};

using IndexSet = std::set<std::size_t>;

// Norm of R = omega(L) as an operator from H = l2 to N = weighted l_q:
// max_j w_j|omega_j| for q >= 2, and the Hoelder l_r formula with
// 1/r = 1/q - 1/2 for q < 2.
double operator_norm_R(const DiagonalModel& model, const SymbolPair& symbols);

// r_{g,e}(Upsilon) = ||(I - P_Upsilon) g|| / ||g||, exactly in [0, 1].
double truncation_residual(const DiagonalModel& model, const std::vector<Complex>& g,
                           const IndexSet& upsilon);

// sup_{j not in Upsilon} |eta_j|; 0 when Upsilon covers everything.
double eta_tail_sup(const DiagonalModel& model, const SymbolPair& symbols,
                    const IndexSet& upsilon);

// The same quantity computed through the operator route: the exact l2 -> l2
// norm of eta(L)(I - P_Upsilon), i.e. max_j ||eta(L)(I-P)e_j||. Test hook for
// the equality with eta_tail_sup.
double eta_tail_operator_norm(const DiagonalModel& model, const SymbolPair& symbols,
                              const IndexSet& upsilon);

struct MasterEstimate {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
};

// Both sides of the truncation estimate for f = (omega*eta)(L) g:
//   ||f - P_Upsilon f||_N <= ||R|| * ||g||_H * sup_{j not in Upsilon}|eta_j|
//                            * r_{g,e}(Upsilon),
// with pass allowing a 1e-9 relative slack for rounding.
MasterEstimate master_estimate_check(const DiagonalModel& model, const SymbolPair& symbols,
                                     const std::vector<Complex>& g, const IndexSet& upsilon);

// Residuals r_{g,e} along a strictly increasing chain of index sets;
// nonincreasing, and 0 once the chain reaches all of 0..M-1.
std::vector<double> net_convergence_trace(const DiagonalModel& model,
                                          const std::vector<Complex>& g,
                                          const std::vector<IndexSet>& chain);

// One replayable configuration: model, symbols, data vector, truncation set.
struct ModelReplay {
    DiagonalModel model;
    SymbolPair symbols;
    std::vector<Complex> g;
    IndexSet upsilon;
};

// Deterministic random configuration for batch verification: dimension up to
// max_dimension, eigenvalues drawn with repeats, nonvanishing bounded
// symbols, nonzero g, and a truncation set that is sometimes empty and
// sometimes everything.
ModelReplay random_model_case(int max_dimension, double q, std::uint64_t seed);

}  // namespace speclab

#endif  // SPECLAB_DIAGONAL_MODEL_HPP
