#include "speclab/diagonal_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>

namespace speclab {

namespace {

void check_vector_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want) throw std::invalid_argument(std::string(what) + ": size mismatch");
}

}  // namespace

DiagonalModel::DiagonalModel(std::vector<Complex> eigenvalues_, std::vector<double> weights_,
                             double q_)
    : eigenvalues(std::move(eigenvalues_)), weights(std::move(weights_)), q(q_) {
    if (eigenvalues.empty()) throw std::invalid_argument("DiagonalModel: empty spectrum");
    check_vector_size(weights.size(), eigenvalues.size(), "DiagonalModel weights");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("DiagonalModel: weights must be positive");
    if (!(q >= 1.0)) throw std::invalid_argument("DiagonalModel: q must be in [1, inf]");
}

double DiagonalModel::n_norm(const std::vector<Complex>& x) const {
    check_vector_size(x.size(), size(), "n_norm");
    if (std::isinf(q)) {
        double sup = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            sup = std::max(sup, weights[j] * std::abs(x[j]));
        return sup;
    }
    std::vector<double> terms(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        terms[j] = std::pow(weights[j] * std::abs(x[j]), q);
    return std::pow(pairwise_sum(terms), 1.0 / q);
}

SymbolPair::SymbolPair(const DiagonalModel& model, std::vector<Complex> omega_,
                       std::vector<Complex> eta_)
    : omega(std::move(omega_)), eta(std::move(eta_)) {
    check_vector_size(omega.size(), model.size(), "SymbolPair omega");
    check_vector_size(eta.size(), model.size(), "SymbolPair eta");
    for (const Complex& v : omega)
        if (v == Complex(0.0, 0.0)) throw std::invalid_argument("SymbolPair: omega has a zero");
    for (const Complex& v : eta)
        if (v == Complex(0.0, 0.0)) throw std::invalid_argument("SymbolPair: eta has a zero");
    // Symbols are functions of the eigenvalue: repeated eigenvalues must
    // carry identical values.
    std::map<std::pair<double, double>, std::size_t> first_at;
    for (std::size_t j = 0; j < model.size(); ++j) {
        const auto key = std::make_pair(model.eigenvalues[j].real(), model.eigenvalues[j].imag());
        const auto [it, inserted] = first_at.emplace(key, j);
        if (!inserted && (omega[j] != omega[it->second] || eta[j] != eta[it->second]))
            throw std::invalid_argument("SymbolPair: inconsistent values on a repeated eigenvalue");
    }
}

double operator_norm_R(const DiagonalModel& model, const SymbolPair& symbols) {
    if (std::isinf(model.q) || model.q >= 2.0) {
        double sup = 0.0;
        for (std::size_t j = 0; j < model.size(); ++j)
            sup = std::max(sup, model.weights[j] * std::abs(symbols.omega[j]));
        return sup;
    }
    const double r = 1.0 / (1.0 / model.q - 0.5);
    std::vector<double> terms(model.size());
    for (std::size_t j = 0; j < model.size(); ++j)
        terms[j] = std::pow(model.weights[j] * std::abs(symbols.omega[j]), r);
    return std::pow(pairwise_sum(terms), 1.0 / r);
}

double truncation_residual(const DiagonalModel& model, const std::vector<Complex>& g,
                           const IndexSet& upsilon) {
    check_vector_size(g.size(), model.size(), "truncation_residual");
    std::vector<double> all(g.size()), tail;
    for (std::size_t j = 0; j < g.size(); ++j) {
        all[j] = std::norm(g[j]);
        if (!upsilon.contains(j)) tail.push_back(all[j]);
    }
    const double total = pairwise_sum(all);
    if (total == 0.0) throw std::domain_error("truncation_residual: g must be nonzero");
    return std::min(1.0, std::sqrt(pairwise_sum(tail) / total));
}

double eta_tail_sup(const DiagonalModel& model, const SymbolPair& symbols,
                    const IndexSet& upsilon) {
    double sup = 0.0;
    for (std::size_t j = 0; j < model.size(); ++j)
        if (!upsilon.contains(j)) sup = std::max(sup, std::abs(symbols.eta[j]));
    return sup;
}

double eta_tail_operator_norm(const DiagonalModel& model, const SymbolPair& symbols,
                              const IndexSet& upsilon) {
    // Diagonal operator: its l2 norm is attained on a basis vector, so run
    // over e_j and take the largest image norm.
    double best = 0.0;
    for (std::size_t j = 0; j < model.size(); ++j) {
        const double image = upsilon.contains(j) ? 0.0 : std::abs(symbols.eta[j]);
        best = std::max(best, image);
    }
    return best;
}

MasterEstimate master_estimate_check(const DiagonalModel& model, const SymbolPair& symbols,
                                     const std::vector<Complex>& g, const IndexSet& upsilon) {
    check_vector_size(g.size(), model.size(), "master_estimate_check");

    std::vector<Complex> f_tail(model.size(), Complex(0.0, 0.0));
    for (std::size_t j = 0; j < model.size(); ++j)
        if (!upsilon.contains(j)) f_tail[j] = symbols.omega[j] * symbols.eta[j] * g[j];

    std::vector<double> g_sq(model.size());
    for (std::size_t j = 0; j < model.size(); ++j) g_sq[j] = std::norm(g[j]);

    MasterEstimate out;
    out.lhs = model.n_norm(f_tail);
    out.rhs = operator_norm_R(model, symbols) * std::sqrt(pairwise_sum(g_sq)) *
              eta_tail_sup(model, symbols, upsilon) * truncation_residual(model, g, upsilon);
    out.pass = out.lhs <= out.rhs * (1.0 + 1e-9);
    return out;
}

std::vector<double> net_convergence_trace(const DiagonalModel& model,
                                          const std::vector<Complex>& g,
                                          const std::vector<IndexSet>& chain) {
    for (std::size_t k = 1; k < chain.size(); ++k) {
        const bool contained = std::includes(chain[k].begin(), chain[k].end(),
                                             chain[k - 1].begin(), chain[k - 1].end());
        if (!contained || chain[k].size() <= chain[k - 1].size())
            throw std::invalid_argument("net_convergence_trace: chain must strictly increase");
    }
    std::vector<double> residuals;
    residuals.reserve(chain.size());
    for (const IndexSet& upsilon : chain)
        residuals.push_back(truncation_residual(model, g, upsilon));
    return residuals;
}

ModelReplay random_model_case(int max_dimension, double q, std::uint64_t seed) {
    if (max_dimension < 1) throw std::invalid_argument("random_model_case: bad dimension cap");
    std::mt19937_64 rng(seed);
    auto uniform = [&rng](double lo, double hi) { return lo + (hi - lo) * uniform01(rng); };

    const std::size_t m = 1 + static_cast<std::size_t>(uniform01(rng) * max_dimension) %
                                  static_cast<std::size_t>(max_dimension);

    // A small eigenvalue pool forces repeated eigenvalues about half the time.
    const bool degenerate = uniform01(rng) < 0.5;
    const std::size_t pool_size = degenerate ? 1 + static_cast<std::size_t>(uniform01(rng) * 4) : m;
    std::vector<Complex> pool(pool_size);
    std::vector<Complex> pool_omega(pool_size), pool_eta(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i) {
        pool[i] = Complex(uniform(-3.0, 3.0), uniform(-3.0, 3.0));
        pool_omega[i] = std::polar(uniform(0.1, 2.0), uniform(0.0, 6.283185307179586));
        pool_eta[i] = std::polar(uniform(0.1, 2.0), uniform(0.0, 6.283185307179586));
    }

    std::vector<Complex> eigenvalues(m), omega(m), eta(m), g(m);
    std::vector<double> weights(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t pick = static_cast<std::size_t>(uniform01(rng) * pool_size) % pool_size;
        eigenvalues[j] = pool[pick];
        omega[j] = pool_omega[pick];
        eta[j] = pool_eta[pick];
        weights[j] = uniform(0.1, 3.0);
        g[j] = Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    }
    // Keep g nonzero.
    if (std::all_of(g.begin(), g.end(), [](Complex v) { return v == Complex(0.0, 0.0); }))
        g[0] = Complex(1.0, 0.0);

    IndexSet upsilon;
    const std::uint64_t mode = rng() % 8;
    if (mode == 1) {
        for (std::size_t j = 0; j < m; ++j) upsilon.insert(j);
    } else if (mode != 0) {
        for (std::size_t j = 0; j < m; ++j)
            if (uniform01(rng) < 0.5) upsilon.insert(j);
    }

    DiagonalModel model(std::move(eigenvalues), std::move(weights), q);
    SymbolPair symbols(model, std::move(omega), std::move(eta));
    return ModelReplay{std::move(model), std::move(symbols), std::move(g), std::move(upsilon)};
}

}  // namespace speclab
